#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "flexsched/milp/model.hpp"
#include "flexsched/milp/solution.hpp"

namespace flexsched::milp {

struct LpOptions {
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
  // Entering candidates with |alpha| below this are skipped by the ratio test.
  double pivot_tolerance = 1e-9;
  // Pivots smaller than this are reported as numerically unstable.
  double instability_threshold = 1e-10;
  int64_t iteration_limit = 50'000'000;
  double time_limit_seconds = 1e30;
  int refactor_interval = 100;
};

enum class VarStatus : uint8_t { kBasic, kAtLower, kAtUpper, kFree };

// Snapshot of a basis: one status per structural then logical variable.
struct BasisState {
  std::vector<VarStatus> status;
};

// Bounded revised dual simplex over the computational form
//   min c'x   s.t.  [A  -I] (x, z) = 0,   lo <= (x, z) <= hi
// where z are row activities. Free or half-bounded nonbasic columns sit at
// artificial bounds that are widened when they become binding. Column bounds
// can be changed between solves; the engine reoptimizes from the current
// basis, which is how branch-and-bound warm starts its nodes.
class LpEngine {
 public:
  explicit LpEngine(const MilpModel& model, LpOptions options = {});
  ~LpEngine();
  LpEngine(const LpEngine&) = delete;
  LpEngine& operator=(const LpEngine&) = delete;

  void set_column_bounds(int col, double lower, double upper);
  double column_lower(int col) const;
  double column_upper(int col) const;

  SolveStatus solve();

  BasisState basis() const;
  void restore_basis(const BasisState& basis);
  void reset_to_slack_basis();

  // Values after solve(); objective in model sense, offset included.
  double objective() const;
  std::vector<double> column_values() const;
  std::vector<double> row_activities() const;
  std::vector<double> row_duals() const;
  std::vector<double> reduced_costs() const;
  double dual_objective() const;

  int64_t iterations() const;
  int64_t refactorizations() const;
  const std::vector<std::string>& warnings() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Solves the LP relaxation of `model` (integrality ignored).
Solution solve_lp(const MilpModel& model, const LpOptions& options = {});

}  // namespace flexsched::milp
