#pragma once

#include <span>
#include <string>
#include <vector>

#include "flexsched/bilevel/kkt.hpp"
#include "flexsched/bilevel/lower_level.hpp"
#include "flexsched/flow/flow_block.hpp"
#include "flexsched/milp/model.hpp"
#include "flexsched/model/case.hpp"
#include "flexsched/scenario/scenarios.hpp"

namespace flexsched::bilevel {

// Column layout of the assembled model, in creation order:
//   1. first stage, by t: pe(t), then rho(t), then df(t) when flexibility is on
//   2. per microgrid (id order): LL primal columns (family-major, then t),
//      LL duals (LL row order), complementarity binaries (pair order)
//   3. per scenario s, per t: Disco DG outputs (unit order), Disco IL (bus order)
//   4. flow columns, s-major, then t, then lines and buses
// Rows follow the same blocks: LL primal rows, stationarity, complementarity
// pairs per microgrid; Disco DG ramps; flexibility rows; flow block.
struct UpperLevelIndex {
  int horizon = 0;
  int num_scenarios = 0;
  int num_dgs = 0;
  int num_buses = 0;
  std::vector<milp::ColId> purchase;  // P^E_t
  std::vector<milp::ColId> price;     // rho^LEM_t
  std::vector<milp::ColId> flex;      // Delta^F_t, empty without flexibility
  std::vector<milp::ColId> disco_dg;
  std::vector<milp::ColId> disco_il;  // invalid id where the IL cap is zero
  flow::FlowVarSet flow;
  std::vector<milp::RowId> dg_ramp_rows;
  std::vector<milp::RowId> purchase_ramp_rows;  // P^E ramp within Delta^F, two per hour
  std::vector<milp::RowId> mg_ramp_rows;        // summed Delta^MG within Delta^F, two per hour

  milp::ColId dg(int g, int t, int s) const { return disco_dg[(s * horizon + t) * num_dgs + g]; }
  milp::ColId il(int bus, int t, int s) const { return disco_il[(s * horizon + t) * num_buses + bus - 1]; }
};

struct MgBlock {
  int mg_id = 0;
  int bus = 0;
  LowerLevelLp lp;
  KktSystem kkt;
  LlColumns primal;
  KktColumns duals;
  ComplementarityEncoding encoding;
  LinearExpr duality;  // equals sum_t rho_t P^MG_t at LL optimality

  milp::ColId col(LlFamily family, int t) const { return primal.primal[lp.var_index(family, t)]; }
};

struct BilevelModel {
  milp::MilpModel milp;
  UpperLevelIndex ul;
  std::vector<MgBlock> mgs;
  flow::FlowBlockCounts flow_counts;
  scenario::ScenarioSet scenarios;
  bool flexibility = true;
  // Load and PV actually used per (bus|unit, t, s), for reporting.
  std::vector<double> bus_load;  // (s * T + t) * N + bus - 1
  std::vector<double> pv_output; // (s * T + t) * |pv| + k

  double load(int bus, int t, int s) const { return bus_load[(s * ul.horizon + t) * ul.num_buses + bus - 1]; }
};

// Adds one KKT-encoded block per microgrid. Requires the first-stage price
// columns to exist already.
void build_lower_levels(BilevelModel& bm, const model::Case& c);

// First-stage columns (P^E, rho, Delta^F). Called before build_lower_levels.
void add_first_stage(BilevelModel& bm, const model::Case& c);

// Second-stage columns and limits, the flexibility rows, the flow block and the
// objective: LEM revenue through the duality expressions, minus WEM cost,
// minus the flexibility penalty, minus expected IL and DG cost, plus expected
// retail revenue (a constant, kept in the objective offset).
void build_upper_level(BilevelModel& bm, const model::Case& c);

// Throws milp::ModelError when series lengths disagree with the horizon.
BilevelModel assemble_milp(const model::Case& c, const scenario::ScenarioSet& scenarios);

struct SolutionAudit {
  double strong_duality_residual = 0.0;  // max over MGs of |expr - rho.P^MG|
  double ll_optimality_gap = 0.0;        // max over MGs of |LL obj at x - direct LL optimum|
  double ramp_residual = 0.0;            // max |Delta^MG - (P^MG_t - P^MG_{t-1})|
  double stationarity_residual = 0.0;
  double complementarity_residual = 0.0; // max slack * dual
  std::vector<double> ll_objective;      // per MG, at x
  std::vector<double> ll_optimum;        // per MG, direct re-solve at the solved prices
  std::vector<std::string> warnings;     // big-M proximity and failed re-solves
};

SolutionAudit audit_solution(const BilevelModel& bm, std::span<const double> x);

// Per-hour solved LEM prices.
std::vector<double> solved_prices(const BilevelModel& bm, std::span<const double> x);

void write_kkt_audit(const BilevelModel& bm, std::ostream& out);

}  // namespace flexsched::bilevel
