#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "flexsched/errors.hpp"
#include "flexsched/model/case.hpp"

namespace flexsched::scenario {

enum class PdfKind {
  kNormal,           // load multiplier
  kIrradianceBeta,   // clearness index k ~ Beta(a, b), value = location * k / E[k]
  kTruncatedNormal,  // normal truncated at zero
};

struct PdfSpec {
  PdfKind kind = PdfKind::kNormal;
  double location = 1.0;
  double scale = 0.1;  // standard deviation for the normal kinds
  double beta_a = 6.0;
  double beta_b = 2.0;
};

struct Branch {
  double value = 0.0;
  double probability = 0.0;
};

// Splits the distribution into `intervals` pieces and represents each by its
// conditional mean. The normal with 3 intervals is cut at location -/+ scale;
// every other case uses equal-probability quantiles.
std::vector<Branch> discretize(const PdfSpec& pdf, int intervals);

struct Scenario {
  int id = 0;
  double probability = 0.0;
  std::vector<double> load_multiplier;  // per hour
  std::vector<double> pv_multiplier;    // per hour
};

struct ScenarioSet {
  std::vector<Scenario> scenarios;
  // Sum of the probabilities as given in an override file, before any
  // normalisation (1 for generated sets).
  double raw_probability_sum = 1.0;
  // True when the stated probabilities add up to exactly one as decimal
  // numbers, or after normalisation by their exact total.
  bool exact_unit_sum = true;

  int size() const { return static_cast<int>(scenarios.size()); }
  int horizon() const { return scenarios.empty() ? 0 : static_cast<int>(scenarios[0].load_multiplier.size()); }
  double probability_sum() const;
  // Index of the most probable scenario (lowest id on ties).
  int modal_index() const;
};

// Scenario s = i * |pv| + j + 1 combines load branch i with PV branch j; the
// probability is the product. Branch values are repeated over T hours.
ScenarioSet build_tree(const std::vector<Branch>& load, const std::vector<Branch>& pv, int horizon);

// Per-hour branch lists ([t][k]); probabilities must agree across hours.
ScenarioSet build_tree(const std::vector<std::vector<Branch>>& load,
                       const std::vector<std::vector<Branch>>& pv);

// Reads "scenario,probability|probability_pct,series,h1..hN" with one load
// and one pv row per scenario, keeping hours [start, start + horizon). With
// normalize=false the probabilities must total exactly 1 (or 100 percent).
ScenarioSet read_override(const std::filesystem::path& path, int horizon, int start = 1,
                          bool normalize = false);

// Generated (discretize + build_tree) or override path, per the case config.
ScenarioSet make_scenarios(const model::Case& c);

void write_csv(const ScenarioSet& set, std::ostream& out);

// Throws InvariantError unless probabilities are positive and total 1 within
// 1e-9 and every multiplier is non-negative.
void check_invariants(const ScenarioSet& set);

}  // namespace flexsched::scenario
