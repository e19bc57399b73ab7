#pragma once

#include <string>
#include <vector>

#include "flexsched/milp/model.hpp"
#include "flexsched/model/case.hpp"

namespace flexsched::bilevel {

enum class LlFamily { kExchange, kDg, kIl, kCharge, kDischarge, kEnergy, kRamp, kOther };

const char* to_string(LlFamily family);

enum class LlRowKind {
  kGeneric,
  kBalance,         // power balance
  kExchangeLimit,   // |P^MG| <= exchange max
  kDgLimit,
  kDgRamp,          // the first hour ramps from p_initial
  kIlLimit,
  kStorageRate,     // charge and discharge limits
  kEnergyLimit,
  kEnergyBalance,   // storage dynamics; the first hour starts from e_initial
  kExchangeRamp,    // Delta^MG definition; the first hour uses the initial exchange
};

// One LL primal variable. Every variable is free in the LP itself; limits are
// rows so that each one gets a dual. `lower`/`upper` is the box implied by
// those rows, used for column bounds and primal big-M values.
struct LlVar {
  std::string name;
  LlFamily family = LlFamily::kOther;
  int t = 0;  // 0-based hour, or 0 for generic variables
  double lower = -milp::kInf;
  double upper = milp::kInf;
  double cost = 0.0;     // fixed objective coefficient
  int price_hour = -1;   // >= 0: the LEM price of this hour is added to the cost
};

struct LlTerm {
  int index;  // variable index for rows, row index for stationarity entries
  double coef;
};

struct LlRow {
  std::string name;
  milp::Sense sense = milp::Sense::kLessEqual;
  double rhs = 0.0;
  std::vector<LlTerm> terms;
  LlRowKind kind = LlRowKind::kGeneric;
  int t = 0;
};

// min sum_x (cost_x + rho[price_hour_x]) x  subject to rows.
struct LowerLevelLp {
  std::string name;
  int horizon = 0;
  std::vector<LlVar> vars;
  std::vector<LlRow> rows;

  int num_vars() const { return static_cast<int>(vars.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  int num_inequalities() const;
  int num_equalities() const { return num_rows() - num_inequalities(); }
  // -1 when absent
  int var_index(LlFamily family, int t) const;

  int add_var(LlVar v);
  int add_row(LlRow r);

  // Full objective at x for the given per-hour prices.
  double objective(const std::vector<double>& x, const std::vector<double>& prices) const;
};

// The microgrid's cost-minimization LP over T hours. Families are laid out
// family-major (P^MG, P^DG, P^IL, P^ch, P^dch, E, Delta^MG), each over t.
// Per hour there are 14 inequality rows (exchange, DG, DG ramp, IL, charge and
// discharge, energy; two each) and 3 equalities (balance, storage dynamics,
// exchange ramp).
LowerLevelLp build_ll_lp(const model::Microgrid& mg, int horizon);

// The LL as a stand-alone LP at fixed prices. Columns are free unless
// `box_bounds` is set; rows are the LL rows in order.
milp::MilpModel to_direct_lp(const LowerLevelLp& lp, const std::vector<double>& prices,
                             bool box_bounds = false);

}  // namespace flexsched::bilevel
