#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace flexsched::milp {

enum class SolveStatus : uint8_t {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kLimit,      // node, iteration or time budget exhausted
  kNumerical,  // pivot below the instability threshold, could not recover
};

std::string_view to_string(SolveStatus status);

struct SolveStats {
  int64_t iterations = 0;
  int64_t nodes = 0;
  int64_t refactorizations = 0;
  double wall_seconds = 0.0;
  double best_bound = 0.0;  // model sense; equals objective for LPs
  double gap = 0.0;         // |objective - best_bound|
};

struct Solution {
  SolveStatus status = SolveStatus::kLimit;
  bool has_values = false;  // an incumbent exists (also under kLimit)
  std::vector<double> values;        // per column
  double objective = 0.0;            // model sense, offset included
  std::vector<double> row_activity;  // per row
  // LP solves only: row duals and reduced costs in model sense, and the dual
  // objective (offset included) evaluated from them.
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
  double dual_objective = 0.0;
  SolveStats stats;
  std::vector<std::string> warnings;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

}  // namespace flexsched::milp
