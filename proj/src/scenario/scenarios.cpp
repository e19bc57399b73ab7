#include "flexsched/scenario/scenarios.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <string>

#include "../model/table.hpp"
#include "flexsched/milp/lp_format.hpp"

namespace flexsched::scenario {
namespace {

namespace bm = boost::math;

double pdf01(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }

std::vector<Branch> normal_branches(double mu, double sigma, const std::vector<double>& cuts_z) {
  // cuts_z: interior boundaries in standard units, ascending
  const bm::normal n01;
  std::vector<Branch> out;
  double lo = -INFINITY;
  for (size_t k = 0; k <= cuts_z.size(); ++k) {
    const double hi = k < cuts_z.size() ? cuts_z[k] : INFINITY;
    const double p_lo = std::isinf(lo) ? 0.0 : bm::cdf(n01, lo);
    const double p_hi = std::isinf(hi) ? 1.0 : bm::cdf(n01, hi);
    const double d_lo = std::isinf(lo) ? 0.0 : pdf01(lo);
    const double d_hi = std::isinf(hi) ? 0.0 : pdf01(hi);
    const double p = p_hi - p_lo;
    out.push_back({mu + sigma * (d_lo - d_hi) / p, p});
    lo = hi;
  }
  return out;
}

std::vector<Branch> truncated_normal_branches(double mu, double sigma, int n) {
  const bm::normal n01;
  const double a = -mu / sigma;  // truncation point in standard units
  const double f0 = bm::cdf(n01, a);
  const double mass = 1.0 - f0;
  std::vector<Branch> out;
  double lo = a;
  for (int k = 0; k < n; ++k) {
    const double hi = k + 1 < n ? bm::quantile(n01, f0 + mass * (k + 1) / n) : INFINITY;
    const double p_lo = bm::cdf(n01, lo);
    const double p_hi = std::isinf(hi) ? 1.0 : bm::cdf(n01, hi);
    const double d_hi = std::isinf(hi) ? 0.0 : pdf01(hi);
    const double raw = p_hi - p_lo;
    out.push_back({std::max(0.0, mu + sigma * (pdf01(lo) - d_hi) / raw), raw / mass});
    lo = hi;
  }
  return out;
}

std::vector<Branch> beta_branches(double location, double a, double b, int n) {
  const bm::beta_distribution<> dist(a, b);
  const bm::beta_distribution<> shifted(a + 1.0, b);  // x f(x) / E[X] is Beta(a+1, b)
  std::vector<Branch> out;
  double q_lo = 0.0;
  for (int k = 0; k < n; ++k) {
    const double q_hi = k + 1 < n ? bm::quantile(dist, static_cast<double>(k + 1) / n) : 1.0;
    const double p = 1.0 / n;
    const double partial = bm::cdf(shifted, q_hi) - bm::cdf(shifted, q_lo);
    // conditional mean of k on the interval, divided by E[k]
    out.push_back({location * partial / p, p});
    q_lo = q_hi;
  }
  return out;
}

}  // namespace

std::vector<Branch> discretize(const PdfSpec& pdf, int intervals) {
  if (intervals < 1) throw InputError("discretize: intervals must be >= 1");
  if (pdf.kind == PdfKind::kIrradianceBeta) {
    if (!(pdf.beta_a > 0.0 && pdf.beta_b > 0.0)) throw InputError("discretize: beta shape parameters must be positive");
    if (pdf.location < 0.0) throw InputError("discretize: irradiance location must be non-negative");
  } else if (!(pdf.scale > 0.0) || !std::isfinite(pdf.scale)) {
    throw InputError("discretize: scale must be positive");
  }
  if (intervals == 1) {
    double mean = pdf.location;
    if (pdf.kind == PdfKind::kTruncatedNormal) mean = truncated_normal_branches(pdf.location, pdf.scale, 1)[0].value;
    return {{mean, 1.0}};
  }
  switch (pdf.kind) {
    case PdfKind::kNormal: {
      std::vector<double> cuts;
      if (intervals == 3) {
        cuts = {-1.0, 1.0};
      } else {
        const bm::normal n01;
        for (int k = 1; k < intervals; ++k) cuts.push_back(bm::quantile(n01, static_cast<double>(k) / intervals));
      }
      return normal_branches(pdf.location, pdf.scale, cuts);
    }
    case PdfKind::kIrradianceBeta:
      return beta_branches(pdf.location, pdf.beta_a, pdf.beta_b, intervals);
    case PdfKind::kTruncatedNormal:
      return truncated_normal_branches(pdf.location, pdf.scale, intervals);
  }
  return {};
}

double ScenarioSet::probability_sum() const {
  double s = 0.0;
  for (const Scenario& sc : scenarios) s += sc.probability;
  return s;
}

int ScenarioSet::modal_index() const {
  int best = 0;
  for (int k = 1; k < size(); ++k) {
    if (scenarios[k].probability > scenarios[best].probability) best = k;
  }
  return best;
}

ScenarioSet build_tree(const std::vector<Branch>& load, const std::vector<Branch>& pv, int horizon) {
  return build_tree(std::vector<std::vector<Branch>>(horizon, load),
                    std::vector<std::vector<Branch>>(horizon, pv));
}

ScenarioSet build_tree(const std::vector<std::vector<Branch>>& load,
                       const std::vector<std::vector<Branch>>& pv) {
  if (load.empty() || load.size() != pv.size()) throw InputError("build_tree: load and pv need the same non-zero horizon");
  const size_t m = load[0].size(), n = pv[0].size();
  if (m == 0 || n == 0) throw InputError("build_tree: empty branch list");
  for (size_t t = 0; t < load.size(); ++t) {
    if (load[t].size() != m || pv[t].size() != n) throw InputError("build_tree: branch count changes over hours");
    for (size_t i = 0; i < m; ++i) {
      if (std::abs(load[t][i].probability - load[0][i].probability) > 1e-12) {
        throw InputError("build_tree: load branch probabilities differ between hours");
      }
    }
    for (size_t j = 0; j < n; ++j) {
      if (std::abs(pv[t][j].probability - pv[0][j].probability) > 1e-12) {
        throw InputError("build_tree: pv branch probabilities differ between hours");
      }
    }
  }
  ScenarioSet set;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) {
      Scenario s;
      s.id = static_cast<int>(i * n + j + 1);
      s.probability = load[0][i].probability * pv[0][j].probability;
      for (size_t t = 0; t < load.size(); ++t) {
        s.load_multiplier.push_back(load[t][i].value);
        s.pv_multiplier.push_back(pv[t][j].value);
      }
      set.scenarios.push_back(std::move(s));
    }
  }
  // branch lists from discretize() total 1 only up to rounding
  set.exact_unit_sum = false;
  set.raw_probability_sum = set.probability_sum();
  return set;
}

namespace {

// Decimal string as an integer numerator over 10^digits.
struct Decimal {
  int64_t numerator = 0;
  int digits = 0;
};

Decimal parse_decimal(const std::string& text, const std::string& file, int line) {
  Decimal d;
  bool seen_point = false, any = false;
  for (char ch : text) {
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      if (d.numerator > (INT64_MAX - 9) / 10 || d.digits > 15) {
        throw ParseError(file, line, "probability has too many digits: '" + text + "'");
      }
      d.numerator = d.numerator * 10 + (ch - '0');
      if (seen_point) ++d.digits;
      any = true;
    } else {
      throw ParseError(file, line, "expected a non-negative decimal probability, got '" + text + "'");
    }
  }
  if (!any) throw ParseError(file, line, "empty probability");
  return d;
}

int64_t pow10(int k) {
  int64_t r = 1;
  while (k-- > 0) r *= 10;
  return r;
}

}  // namespace

ScenarioSet read_override(const std::filesystem::path& path, int horizon, int start, bool normalize) {
  using model::detail::Table;
  Table t = Table::read(path);
  const int c_id = t.column("scenario");
  const bool percent = t.has_column("probability_pct");
  const int c_p = t.column(percent ? "probability_pct" : "probability");
  const int c_series = t.column("series");
  std::vector<int> hour_cols;
  for (int h = start; h < start + horizon; ++h) {
    if (!t.has_column("h" + std::to_string(h))) {
      throw ValidationError(path.filename().string(), "no column h" + std::to_string(h) +
                                                         " for the requested horizon window");
    }
    hour_cols.push_back(t.column("h" + std::to_string(h)));
  }

  struct Entry {
    Decimal prob;
    std::string prob_text;
    int line = 0;
    std::vector<double> load, pv;
  };
  std::map<int, Entry> entries;
  for (const auto& row : t.rows()) {
    const int id = t.integer(row, c_id);
    if (id < 1) throw ParseError(t.file(), row.line, "scenario ids start at 1");
    Entry& e = entries[id];
    Decimal p = parse_decimal(row.fields[c_p], t.file(), row.line);
    if (e.line == 0) {
      e.prob = p;
      e.prob_text = row.fields[c_p];
      e.line = row.line;
    } else if (row.fields[c_p] != e.prob_text) {
      throw ParseError(t.file(), row.line, "scenario " + std::to_string(id) + " has two different probabilities");
    }
    std::vector<double> values;
    for (int col : hour_cols) {
      double v = t.number(row, col);
      if (v < 0.0) throw ValidationError("scenario " + std::to_string(id), "negative multiplier");
      values.push_back(v);
    }
    const std::string& series = row.fields[c_series];
    std::vector<double>* slot = series == "load" ? &e.load : series == "pv" ? &e.pv : nullptr;
    if (!slot) throw ParseError(t.file(), row.line, "series must be 'load' or 'pv', got '" + series + "'");
    if (!slot->empty()) throw ParseError(t.file(), row.line, "duplicate " + series + " row for scenario " + std::to_string(id));
    *slot = std::move(values);
  }
  if (entries.empty()) throw ValidationError(path.filename().string(), "no scenarios");

  int digits = 0;
  for (const auto& [id, e] : entries) digits = std::max(digits, e.prob.digits);
  int64_t total = 0;
  for (const auto& [id, e] : entries) {
    if (e.prob.numerator == 0) throw ValidationError("scenario " + std::to_string(id), "probability must be positive");
    total += e.prob.numerator * pow10(digits - e.prob.digits);
  }
  const int64_t unit = pow10(digits) * (percent ? 100 : 1);

  ScenarioSet set;
  set.raw_probability_sum = static_cast<double>(total) / static_cast<double>(unit);
  if (!normalize && total != unit) {
    throw ValidationError(path.filename().string(),
                          "scenario probabilities sum to " + milp::format_number(set.raw_probability_sum) +
                              ", not 1");
  }
  int expected_id = 1;
  for (auto& [id, e] : entries) {
    if (id != expected_id++) throw ValidationError(path.filename().string(), "scenario ids must be 1..S without gaps");
    if (e.load.empty() || e.pv.empty()) {
      throw ValidationError("scenario " + std::to_string(id), "needs one load row and one pv row");
    }
    Scenario s;
    s.id = id;
    const int64_t scaled = e.prob.numerator * pow10(digits - e.prob.digits);
    s.probability = static_cast<double>(scaled) / static_cast<double>(total);
    s.load_multiplier = std::move(e.load);
    s.pv_multiplier = std::move(e.pv);
    set.scenarios.push_back(std::move(s));
  }
  // p_s / total over the exact integer total is a rational partition of one
  set.exact_unit_sum = true;
  check_invariants(set);
  return set;
}

ScenarioSet make_scenarios(const model::Case& c) {
  const model::ScenarioSettings& s = c.config.scenarios;
  ScenarioSet set;
  if (s.source == model::ScenarioSource::kOverride) {
    std::filesystem::path file = s.override_file;
    if (file.is_relative() && !c.directory.empty()) file = std::filesystem::path(c.directory) / file;
    set = read_override(file, c.config.horizon, c.config.horizon_start, s.normalize);
  } else {
    PdfSpec load{PdfKind::kNormal, 1.0, s.load_sigma};
    PdfSpec pv;
    pv.location = 1.0;
    if (s.pv_distribution == model::PvDistribution::kBeta) {
      pv.kind = PdfKind::kIrradianceBeta;
      pv.beta_a = s.pv_beta_a;
      pv.beta_b = s.pv_beta_b;
    } else {
      pv.kind = PdfKind::kTruncatedNormal;
      pv.scale = s.pv_sigma;
    }
    set = build_tree(discretize(load, s.load_intervals), discretize(pv, s.pv_intervals), c.config.horizon);
  }
  check_invariants(set);
  return set;
}

void write_csv(const ScenarioSet& set, std::ostream& out) {
  out << "scenario,probability,series";
  for (int h = 1; h <= set.horizon(); ++h) out << ",h" << h;
  out << '\n';
  for (const Scenario& s : set.scenarios) {
    for (const auto* series : {&s.load_multiplier, &s.pv_multiplier}) {
      out << s.id << ',' << milp::format_number(s.probability) << ','
          << (series == &s.load_multiplier ? "load" : "pv");
      for (double v : *series) out << ',' << milp::format_number(v);
      out << '\n';
    }
  }
}

void check_invariants(const ScenarioSet& set) {
  if (set.scenarios.empty()) throw InvariantError("scenario set is empty");
  for (const Scenario& s : set.scenarios) {
    if (!(s.probability > 0.0)) throw InvariantError("scenario " + std::to_string(s.id) + " has non-positive probability");
    if (s.load_multiplier.size() != s.pv_multiplier.size() ||
        static_cast<int>(s.load_multiplier.size()) != set.horizon()) {
      throw InvariantError("scenario " + std::to_string(s.id) + " has inconsistent horizon");
    }
    for (double v : s.load_multiplier) if (v < 0.0) throw InvariantError("negative load multiplier");
    for (double v : s.pv_multiplier) if (v < 0.0) throw InvariantError("negative pv multiplier");
  }
  if (std::abs(set.probability_sum() - 1.0) > 1e-9) {
    throw InvariantError("scenario probabilities sum to " + milp::format_number(set.probability_sum()));
  }
}

}  // namespace flexsched::scenario
