#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "flexsched/model/io.hpp"
#include "flexsched/scenario/scenarios.hpp"

using namespace flexsched;
using namespace flexsched::scenario;
namespace fs = std::filesystem;

namespace {

// Composite Simpson rule; independent of the closed forms in the library.
double integrate(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double normal_density(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

const fs::path kBundled = fs::path(FLEXSCHED_DATA_DIR) / "ieee33";

}  // namespace

TEST_CASE("standard normal split at one sigma") {
  auto b = discretize({PdfKind::kNormal, 0.0, 1.0}, 3);
  REQUIRE(b.size() == 3);
  auto dens = [](double x) { return normal_density(x, 0.0, 1.0); };
  const double tail = integrate(dens, -12.0, -1.0);
  const double centre = integrate(dens, -1.0, 1.0);
  CHECK(b[0].probability == doctest::Approx(tail).epsilon(1e-9));
  CHECK(b[1].probability == doctest::Approx(centre).epsilon(1e-9));
  CHECK(b[2].probability == doctest::Approx(tail).epsilon(1e-9));
  CHECK(b[0].probability == doctest::Approx(0.1587).epsilon(1e-3));
  CHECK(b[1].probability == doctest::Approx(0.6827).epsilon(1e-3));
  const double tail_mean = integrate([&](double x) { return x * dens(x); }, -12.0, -1.0) / tail;
  CHECK(b[0].value == doctest::Approx(tail_mean).epsilon(1e-8));
  CHECK(b[1].value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b[2].value == doctest::Approx(-tail_mean).epsilon(1e-8));
}

TEST_CASE("load normal with location and scale") {
  auto b = discretize({PdfKind::kNormal, 1.0, 0.1}, 3);
  double mean = 0.0, mass = 0.0;
  for (auto& br : b) {
    mean += br.value * br.probability;
    mass += br.probability;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("one interval gives the mean with probability one") {
  for (PdfKind k : {PdfKind::kNormal, PdfKind::kIrradianceBeta}) {
    auto b = discretize({k, 0.8, 0.2, 3.0, 2.0}, 1);
    REQUIRE(b.size() == 1);
    CHECK(b[0].probability == 1.0);
    CHECK(b[0].value == doctest::Approx(0.8));
  }
  // truncation at zero pulls the mean up
  auto t = discretize({PdfKind::kTruncatedNormal, 0.1, 0.2}, 1);
  auto dens = [](double x) { return normal_density(x, 0.1, 0.2); };
  const double mass = integrate(dens, 0.0, 3.0);
  CHECK(t[0].value == doctest::Approx(integrate([&](double x) { return x * dens(x); }, 0.0, 3.0) / mass).epsilon(1e-8));
}

TEST_CASE("degenerate scale is rejected") {
  CHECK_THROWS_AS(discretize({PdfKind::kNormal, 1.0, 0.0}, 3), InputError);
  CHECK_THROWS_AS(discretize({PdfKind::kTruncatedNormal, 1.0, -1.0}, 3), InputError);
  CHECK_THROWS_AS(discretize({PdfKind::kIrradianceBeta, 1.0, 0.1, 0.0, 2.0}, 3), InputError);
  CHECK_THROWS_AS(discretize({PdfKind::kNormal, 1.0, 0.1}, 0), InputError);
}

TEST_CASE("irradiance tertiles match numerical integration") {
  const double a = 6.0, b = 2.0;
  auto br = discretize({PdfKind::kIrradianceBeta, 1.0, 0.0, a, b}, 3);
  // Beta(6, 2) density is 42 x^5 (1 - x)
  auto dens = [](double x) { return 42.0 * std::pow(x, 5) * (1.0 - x); };
  const double mean = integrate([&](double x) { return x * dens(x); }, 0.0, 1.0);
  CHECK(mean == doctest::Approx(0.75));
  double lo = 0.0, total = 0.0;
  for (int k = 0; k < 3; ++k) {
    // locate the tertile boundary by bisection on the integrated density
    double hi = 1.0;
    if (k < 2) {
      double l = lo, h = 1.0;
      for (int it = 0; it < 60; ++it) {
        double m = 0.5 * (l + h);
        (integrate(dens, 0.0, m, 4000) < (k + 1) / 3.0 ? l : h) = m;
      }
      hi = 0.5 * (l + h);
    }
    const double p = integrate(dens, lo, hi);
    const double cond = integrate([&](double x) { return x * dens(x); }, lo, hi) / p;
    CHECK(br[k].probability == doctest::Approx(p).epsilon(1e-7));
    CHECK(br[k].value == doctest::Approx(cond / mean).epsilon(1e-7));
    total += br[k].probability * br[k].value;
    lo = hi;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("3x3 tree of (0.2, 0.6, 0.2) branches") {
  std::vector<Branch> load{{0.9, 0.2}, {1.0, 0.6}, {1.1, 0.2}};
  std::vector<Branch> pv{{0.5, 0.2}, {1.0, 0.6}, {1.5, 0.2}};
  ScenarioSet set = build_tree(load, pv, 4);
  REQUIRE(set.size() == 9);
  CHECK(std::abs(set.probability_sum() - 1.0) <= 1e-9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Scenario& s = set.scenarios[i * 3 + j];
      CHECK(s.id == i * 3 + j + 1);
      CHECK(s.probability == doctest::Approx(load[i].probability * pv[j].probability));
      CHECK(s.load_multiplier[3] == load[i].value);
      CHECK(s.pv_multiplier[0] == pv[j].value);
    }
  }
  double e_load = 0.0, e_pv = 0.0;
  for (const Scenario& s : set.scenarios) {
    e_load += s.probability * s.load_multiplier[0];
    e_pv += s.probability * s.pv_multiplier[0];
  }
  CHECK(std::abs(e_load - 1.0) <= 1e-9);
  CHECK(std::abs(e_pv - 1.0) <= 1e-9);
  CHECK(set.modal_index() == 4);
}

TEST_CASE("single branch tree") {
  ScenarioSet set = build_tree({{1.0, 1.0}}, {{1.0, 1.0}}, 2);
  REQUIRE(set.size() == 1);
  CHECK(set.scenarios[0].probability == 1.0);
}

TEST_CASE("bundled probability table override") {
  const fs::path file = kBundled / "scenarios.csv";
  SUBCASE("strict loading rejects the 91 percent total") {
    try {
      read_override(file, 24, 1, false);
      FAIL("expected rejection");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("0.91") != std::string::npos);
    }
  }
  SUBCASE("normalised loading") {
    ScenarioSet set = read_override(file, 24, 1, true);
    REQUIRE(set.size() == 9);
    CHECK(set.raw_probability_sum == doctest::Approx(0.91));
    CHECK(set.exact_unit_sum);
    const int pct[] = {3, 6, 12, 6, 12, 42, 1, 2, 7};
    for (int s = 0; s < 9; ++s) CHECK(set.scenarios[s].probability == pct[s] / 91.0);
    CHECK(std::abs(set.probability_sum() - 1.0) <= 1e-15);
    CHECK(set.modal_index() == 5);
  }
}

TEST_CASE("override with an exact unit sum loads strictly") {
  fs::path dir = fs::temp_directory_path() / "flexsched_scen";
  fs::create_directories(dir);
  std::ofstream(dir / "s.csv") << "scenario,probability,series,h1,h2\n"
                                  "1,0.25,load,1,1\n1,0.25,pv,0,1\n"
                                  "2,0.75,load,1.1,1.2\n2,0.75,pv,1,1\n";
  ScenarioSet set = read_override(dir / "s.csv", 1, 2, false);
  CHECK(set.exact_unit_sum);
  CHECK(set.scenarios[1].probability == 0.75);
  CHECK(set.scenarios[1].load_multiplier == std::vector<double>{1.2});
  std::ofstream(dir / "bad.csv") << "scenario,probability,series,h1\n1,0.5,load,1\n1,0.5,pv,1\n";
  CHECK_THROWS_AS(read_override(dir / "bad.csv", 1, 1, false), ValidationError);
  std::ofstream(dir / "neg.csv") << "scenario,probability,series,h1\n1,1,load,-1\n1,1,pv,1\n";
  CHECK_THROWS_AS(read_override(dir / "neg.csv", 1, 1, false), ValidationError);
}

TEST_CASE("bundled case scenarios and CSV dump") {
  model::Case c = model::load_case(kBundled, {{"horizon", "8"}, {"horizon_start", "14"}});
  ScenarioSet a = make_scenarios(c);
  ScenarioSet b = make_scenarios(c);
  CHECK(a.size() == 9);
  CHECK(a.horizon() == 8);
  std::ostringstream da, db;
  write_csv(a, da);
  write_csv(b, db);
  CHECK(da.str() == db.str());
  CHECK(da.str().rfind("scenario,probability,series,h1,", 0) == 0);

  model::Case g = model::load_case(kBundled, {{"scenario_source", "generated"}});
  ScenarioSet gen = make_scenarios(g);
  CHECK(gen.size() == 9);
  CHECK(std::abs(gen.probability_sum() - 1.0) <= 1e-9);
}
