#include <doctest.h>

#include <cmath>
#include <random>

#include "flexsched/milp/branch_and_bound.hpp"
#include "support/oracles.hpp"

using namespace flexsched::milp;
using flexsched::testing::random_binary_program;
using flexsched::testing::subset_enumeration;
using flexsched::testing::to_model;

TEST_CASE("three item knapsack") {
  MilpModel model;
  model.set_objective_sense(ObjectiveSense::kMaximize);
  ColId a = model.add_binary("a", 3.0);
  ColId b = model.add_binary("b", 4.0);
  ColId c = model.add_binary("c", 5.0);
  model.add_row("cap", Sense::kLessEqual, 5.0, {{a, 2.0}, {b, 3.0}, {c, 4.0}});
  Solution sol = solve_milp(model);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == doctest::Approx(7.0));
  CHECK(sol.values[0] == 1.0);
  CHECK(sol.values[1] == 1.0);
  CHECK(sol.values[2] == 0.0);
  CHECK(sol.stats.gap <= 1e-6);
}

TEST_CASE("binaries fixed by bounds reduce to the LP") {
  MilpModel model;
  ColId u = model.add_binary("u", 2.0);
  ColId x = model.add_column("x", 0.0, 10.0, 1.0);
  model.set_bounds(u, 1.0, 1.0);
  model.add_row("link", Sense::kGreaterEqual, 3.0, {{x, 1.0}, {u, 1.0}});
  Solution sol = solve_milp(model);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == doctest::Approx(4.0));
  CHECK(sol.values[1] == doctest::Approx(2.0));
}

TEST_CASE("infeasible binary program") {
  MilpModel model;
  ColId a = model.add_binary("a", 1.0);
  ColId b = model.add_binary("b", 1.0);
  model.add_row("odd", Sense::kEqual, 1.0, {{a, 2.0}, {b, 2.0}});
  CHECK(solve_milp(model).status == SolveStatus::kInfeasible);
}

TEST_CASE("node limit returns the incumbent with limit status") {
  std::mt19937_64 rng(99);
  MilpOptions opts;
  opts.dive_interval = -1;
  // first instance whose unrestricted search needs more than a handful of nodes
  MilpModel model;
  for (int attempt = 0; attempt < 50; ++attempt) {
    model = to_model(random_binary_program(rng, 16, 3), true);
    if (solve_milp(model, opts).stats.nodes > 10) break;
  }
  opts.node_limit = 3;
  Solution sol = solve_milp(model, opts);
  CHECK(sol.status == SolveStatus::kLimit);
  CHECK(sol.stats.nodes <= 3);
  if (sol.has_values) CHECK(sol.stats.best_bound >= sol.objective - 1e-9);
}

TEST_CASE("random binary programs agree with subset enumeration") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 50; ++trial) {
    int vars = 4 + trial % 9;
    int rows = 1 + trial % 4;
    auto lp = random_binary_program(rng, vars, rows);
    auto expected = subset_enumeration(lp);
    MilpModel model = to_model(lp, true);
    Solution sol = solve_milp(model);
    CAPTURE(trial);
    if (!expected) {
      CHECK(sol.status == SolveStatus::kInfeasible);
      continue;
    }
    REQUIRE(sol.status == SolveStatus::kOptimal);
    CHECK(std::abs(sol.objective - *expected) <= 1e-6);
    // bound never better than what the enumeration proves attainable
    CHECK(sol.stats.best_bound >= *expected - 1e-6);
    for (int i = 0; i < model.num_rows(); ++i) {
      const Row& row = model.row(i);
      double act = model.row_activity(i, sol.values);
      if (row.sense == Sense::kLessEqual) CHECK(act <= row.rhs + 1e-6);
      if (row.sense == Sense::kGreaterEqual) CHECK(act >= row.rhs - 1e-6);
    }
  }
}

TEST_CASE("mixed binary and continuous facility toy") {
  // open facility u_k at fixed cost f_k; serve demand 5 from open ones
  MilpModel model;
  ColId u1 = model.add_binary("u1", 10.0);
  ColId u2 = model.add_binary("u2", 4.0);
  ColId x1 = model.add_column("x1", 0.0, kInf, 1.0);
  ColId x2 = model.add_column("x2", 0.0, kInf, 3.0);
  model.add_row("demand", Sense::kEqual, 5.0, {{x1, 1.0}, {x2, 1.0}});
  model.add_row("cap1", Sense::kLessEqual, 0.0, {{x1, 1.0}, {u1, -5.0}});
  model.add_row("cap2", Sense::kLessEqual, 0.0, {{x2, 1.0}, {u2, -5.0}});
  Solution sol = solve_milp(model);
  REQUIRE(sol.optimal());
  // options: u1 only 15, u2 only 19, both 15
  CHECK(sol.objective == doctest::Approx(15.0));
}
