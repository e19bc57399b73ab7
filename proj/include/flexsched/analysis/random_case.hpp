#pragma once

#include <cstdint>

#include "flexsched/model/case.hpp"

namespace flexsched::analysis {

struct RandomCaseShape {
  int buses = 5;
  int microgrids = 1;
  int horizon = 3;
  int disco_dgs = 1;
  int pvs = 1;
};

// Small feasible radial case drawn from a seeded generator: short low-loss
// lines, a wide voltage window, ample wholesale capacity and one generated
// load scenario. The same seed and shape always give the same case.
model::Case random_case(uint64_t seed, const RandomCaseShape& shape = {});

}  // namespace flexsched::analysis
