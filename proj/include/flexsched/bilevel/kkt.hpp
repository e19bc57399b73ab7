#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "flexsched/bilevel/lower_level.hpp"
#include "flexsched/milp/model.hpp"

namespace flexsched::bilevel {

// KKT conditions of min c'x s.t. rows, with one multiplier y_r per row:
// y_r >= 0 for <= and >= rows, free for equalities. Stationarity per x_k:
//   c_k + sum_r sign_r a_rk y_r = 0,  sign = +1 for <= and =, -1 for >=.
// The dual objective is sum_r kappa_r b_r y_r with kappa = -1 for <= and =,
// +1 for >=; at a KKT point it equals c'x.
struct StationarityRow {
  int var = 0;
  std::vector<LlTerm> duals;  // (row, sign_r * a_rk)
};

struct ComplementarityPair {
  int row = 0;
  milp::Sense sense = milp::Sense::kLessEqual;
};

struct KktSystem {
  std::vector<StationarityRow> stationarity;  // one per variable, in order
  std::vector<ComplementarityPair> pairs;     // one per inequality row, in order
  std::vector<bool> dual_nonnegative;         // per row

  int num_pairs() const { return static_cast<int>(pairs.size()); }
};

double stationarity_sign(milp::Sense sense);
double dual_objective_sign(milp::Sense sense);

// Throws milp::ModelError if some variable has an empty column.
KktSystem derive_kkt(const LowerLevelLp& lp);

struct BigM {
  std::vector<double> primal;  // per pair
  double dual = 0.0;
};

// Primal: 2 x the largest slack the pair's row can show over the variable box
// (at least 1). Dual: 10 x the largest cost coefficient, where price columns
// count with `price_cap`. Overrides replace the derived values.
// Throws milp::ModelError when a slack range is unbounded and no override is set.
BigM default_big_m(const LowerLevelLp& lp, const KktSystem& kkt, double price_cap,
                   std::optional<double> primal_override = std::nullopt,
                   std::optional<double> dual_override = std::nullopt);

// LEM price source for the P^MG stationarity rows: columns when embedded in
// the bilevel model, constants for a stand-alone LL.
struct PriceSource {
  std::vector<milp::ColId> columns;
  std::vector<double> values;
};

struct LlColumns {
  std::vector<milp::ColId> primal;  // per LL variable
  std::vector<milp::RowId> rows;    // primal feasibility, per LL row
};

struct KktColumns {
  std::vector<milp::ColId> dual;          // per LL row
  std::vector<milp::RowId> stationarity;  // per LL variable
};

struct ComplementarityEncoding {
  std::vector<milp::ColId> binary;       // per pair
  std::vector<milp::RowId> primal_rows;  // slack <= M_p (1 - u)
  std::vector<milp::RowId> dual_rows;    // dual <= M_d u
  BigM big_m;
};

// Column and row names are prefixed with `prefix` (for example "mg1_").
LlColumns add_ll_primal(milp::MilpModel& model, const LowerLevelLp& lp, const std::string& prefix);

KktColumns add_kkt(milp::MilpModel& model, const LowerLevelLp& lp, const KktSystem& kkt,
                   const LlColumns& primal, const PriceSource& prices, const BigM& big_m,
                   const std::string& prefix);

ComplementarityEncoding encode_complementarity(milp::MilpModel& model, const LowerLevelLp& lp,
                                               const KktSystem& kkt, const LlColumns& primal,
                                               const KktColumns& duals, const BigM& big_m,
                                               const std::string& prefix);

struct LinearExpr {
  std::vector<milp::Term> terms;
  double constant = 0.0;
  double evaluate(std::span<const double> x) const;
};

// sum_t rho_t P^MG_t rewritten as dual objective minus the non-price LL costs.
// Contains only LL duals and LL primal columns, never rho.
LinearExpr strong_duality_expr(const LowerLevelLp& lp, const KktSystem& kkt,
                               const LlColumns& primal, const KktColumns& duals);

// Stand-alone KKT MILP of one LL at fixed prices: the objective is the LL
// objective, so any feasible point reproduces the LP optimum.
struct LlKktModel {
  milp::MilpModel model;
  LlColumns primal;
  KktColumns duals;
  ComplementarityEncoding encoding;
};
LlKktModel build_ll_kkt_milp(const LowerLevelLp& lp, const std::vector<double>& prices,
                             const BigM& big_m);

// Pairs whose slack or dual lies within `tol` of its big-M at x.
std::vector<std::string> big_m_warnings(const milp::MilpModel& model, const LowerLevelLp& lp,
                                        const KktSystem& kkt, const LlColumns& primal,
                                        const KktColumns& duals,
                                        const ComplementarityEncoding& enc,
                                        std::span<const double> x, double tol = 1e-6);

// One line per stationarity row and per complementarity pair.
void write_kkt_audit(const LowerLevelLp& lp, const KktSystem& kkt, const BigM& big_m,
                     std::ostream& out);

}  // namespace flexsched::bilevel
