#pragma once

#include <cstdint>

#include "flexsched/milp/lp_solver.hpp"
#include "flexsched/milp/model.hpp"
#include "flexsched/milp/solution.hpp"

namespace flexsched::milp {

struct MilpOptions {
  LpOptions lp;
  double absolute_gap = 1e-6;
  double relative_gap = 0.0;
  double integrality_tolerance = 1e-6;
  int64_t node_limit = 2'000'000;
  double time_limit_seconds = 1e30;
  // A rounding dive runs at the root and then every `dive_interval` nodes;
  // 0 keeps only the root dive, negative disables diving.
  int dive_interval = 50;
  // Re-solve the LP with every binary fixed at its rounded incumbent value so
  // reported continuous values are exact for that assignment.
  bool polish_incumbent = true;
};

// Best-bound branch-and-bound over binary columns. Branches on the most
// fractional binary (ties: lowest column index); open nodes are ordered by
// bound with FIFO tie-breaking. Status is kLimit when a budget runs out; the
// best incumbent, if any, is still returned with has_values set.
Solution solve_milp(const MilpModel& model, const MilpOptions& options = {});

}  // namespace flexsched::milp
