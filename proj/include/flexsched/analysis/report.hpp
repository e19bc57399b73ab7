#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "flexsched/bilevel/bilevel_model.hpp"
#include "flexsched/milp/branch_and_bound.hpp"
#include "flexsched/milp/model.hpp"
#include "flexsched/milp/solution.hpp"
#include "flexsched/model/case.hpp"
#include "flexsched/scenario/scenarios.hpp"

namespace flexsched::analysis {

// Error raised by run_case; `stage` says which step of the pipeline failed.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct RampProfile {
  std::vector<double> purchase;  // P^E_t
  // P^E_t - P^E_{t-1}. The first hour compares with the initial purchase
  // when one is configured and is 0 (and left out of the extremes) otherwise.
  std::vector<double> ramp;
  std::vector<double> flex;      // Delta^F_t, empty without flexibility
  double max_up = 0.0;
  double max_down = 0.0;
};

// Hourly operation of one microgrid. Scenario independent: the lower level
// sees forecast demand and PV.
struct MgReport {
  int id = 0;
  int bus = 0;
  double cost = 0.0;  // recomputed LL objective at the solved prices
  std::vector<double> demand, pv, exchange, dg, il, charge, discharge, energy, ramp;
  std::vector<double> residual;  // supply - demand per hour
};

// Disco side of one scenario.
struct ScenarioReport {
  int id = 0;
  double probability = 0.0;
  double profit = 0.0;  // first-stage terms plus this scenario's terms
  std::vector<double> dg;    // summed over units, per hour
  std::vector<double> il;    // summed over buses, per hour
  std::vector<double> load;  // summed over buses, per hour
  std::vector<double> pv;    // Disco PV, per hour
  std::vector<double> loss;  // line losses, per hour
};

// Balance terms of one bus and hour in the reported scenario.
struct BusBalance {
  int bus = 0;
  int t = 0;
  double purchase = 0.0, dg = 0.0, pv = 0.0, il = 0.0, load = 0.0, mg_exchange = 0.0;
  double line_export = 0.0;  // net power leaving through the lines, half losses included
  double residual = 0.0;     // injections - load - mg purchase - line export
};

struct ProfitBreakdown {
  double lem_revenue = 0.0;
  double retail_revenue = 0.0;
  double wem_cost = 0.0;
  double flex_penalty = 0.0;
  double il_cost = 0.0;
  double dg_cost = 0.0;
  double total() const { return lem_revenue + retail_revenue - wem_cost - flex_penalty - il_cost - dg_cost; }
};

struct ReferenceValue {
  std::string metric;
  double reference = 0.0;
  double computed = 0.0;
};

struct CaseReport {
  std::string case_name;
  int horizon = 0;
  bool flexibility = false;
  milp::SolveStatus status = milp::SolveStatus::kLimit;
  bool has_solution = false;
  std::string solver;  // "embedded" or "external"
  double objective = 0.0;  // solver objective
  ProfitBreakdown profit;   // recomputed from primal values
  double total_purchase = 0.0;
  double expected_il = 0.0;  // expected Disco IL, MW summed over hours
  double expected_dg = 0.0;
  std::vector<double> lem_price;
  std::vector<double> wem_price;
  RampProfile ramp;
  std::vector<double> mg_ramp_sum;  // sum_j Delta^MG_{j,t}
  std::vector<MgReport> mgs;
  std::vector<ScenarioReport> scenarios;
  int view_scenario = 0;  // index used for the per-bus tables
  std::vector<BusBalance> bus_balance;
  bilevel::SolutionAudit audit;
  milp::ModelStats model_stats;
  milp::SolveStats solve_stats;
  std::vector<ReferenceValue> references;
  std::vector<std::string> warnings;

  double max_bus_residual() const;
  double max_mg_residual() const;
};

struct RunOptions {
  milp::MilpOptions milp;
  // index into the scenario set for the per-bus view; unset picks the modal one
  std::optional<int> view_scenario;
  // Export mode: model path and solution path; the command, if any, is run
  // with {model} and {solution} substituted before the solution is read.
  std::filesystem::path export_path = "model.lp";
  std::filesystem::path solution_path = "model.sol";
  std::string external_command;
  // the pipeline throws InvariantError when a recomputed check misses this
  double check_tolerance = 1e-4;
  std::function<void(const std::string&)> log;
};

// Scenarios, model assembly, solve and report. Each stage's errors are
// rethrown as StageError (InputError and InvariantError pass unchanged so
// callers can map them to exit codes).
CaseReport run_case(const model::Case& c, const RunOptions& options = {});

// The report for an already solved model.
CaseReport build_report(const model::Case& c, const bilevel::BilevelModel& bm,
                        const milp::Solution& solution, const RunOptions& options = {});

// Name of the bundled 33-bus case; run_case attaches the reference
// values (as annotations, never checked) only to reports of this case.
inline constexpr const char* kBundledCaseName = "ieee33-reconstructed";

void attach_references(CaseReport& report);

struct ComparisonRow {
  std::string metric;
  double without_flex = 0.0;
  double with_flex = 0.0;
  double delta() const { return with_flex - without_flex; }
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  double lost_revenue = 0.0;  // profit without minus profit with flexibility
  std::vector<double> price_without, price_with;
};

// Throws InputError when the horizons differ.
Comparison compare_cases(const CaseReport& without_flex, const CaseReport& with_flex);

void write_summary(const CaseReport& report, std::ostream& out);
void write_comparison(const Comparison& cmp, std::ostream& out);
void write_bus_balance(const CaseReport& report, std::ostream& out);
void write_report_json(const CaseReport& report, std::ostream& out);

// Figure data, one row per hour in every file:
//   purchase.csv   hour,purchase_mw,wem_price,lem_price
//   ramp.csv       hour,ramp_mw_h,flex_cap_mw_h
//   mg_ramp.csv    hour,mg_ramp_sum_mw_h,flex_cap_mw_h,mg<j>_ramp_mw_h...
//   mg_balance.csv hour, per MG: demand,pv,dg,il,discharge,charge,exchange,residual
//   lem_price.csv  hour,lem_price
// Returns the paths written. Throws milp::IoError on failure.
std::vector<std::filesystem::path> emit_plot_data(const CaseReport& report,
                                                  const std::filesystem::path& outdir);

}  // namespace flexsched::analysis
