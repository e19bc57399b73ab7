#include "flexsched/milp/lp_format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace flexsched::milp {
namespace {

constexpr int kTermsPerLine = 8;

bool valid_name(const std::string& name) {
  if (name.empty() || name.size() > 255) return false;
  const char first = name.front();
  if (!(std::isalpha(static_cast<unsigned char>(first)) || first == '_')) return false;
  for (char c : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
                    c == '(' || c == ')' || c == ',';
    if (!ok) return false;
  }
  return true;
}

void check_names(const MilpModel& model) {
  for (const Column& c : model.columns()) {
    if (!valid_name(c.name)) throw ModelError("column name not representable in LP format: '" + c.name + "'");
  }
  for (const Row& r : model.rows()) {
    if (!valid_name(r.name)) throw ModelError("row name not representable in LP format: '" + r.name + "'");
  }
}

void write_terms(std::ostream& out, const std::vector<Term>& terms, const MilpModel& model) {
  int on_line = 0;
  for (const Term& t : terms) {
    if (on_line == kTermsPerLine) {
      out << "\n  ";
      on_line = 0;
    }
    out << (t.coef < 0 ? " - " : " + ") << format_number(std::abs(t.coef)) << ' '
        << model.col(t.col.value).name;
    ++on_line;
  }
}

const char* sense_token(Sense s) {
  switch (s) {
    case Sense::kLessEqual: return "<=";
    case Sense::kEqual: return "=";
    case Sense::kGreaterEqual: return ">=";
  }
  return "=";
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_lp(const MilpModel& model, std::ostream& out) {
  model.validate();
  check_names(model);
  const int n = model.num_cols();

  std::vector<char> in_row(n, 0);
  for (const Row& r : model.rows()) {
    for (const Term& t : r.terms) in_row[t.col.value] = 1;
  }
  // Columns absent from every row still need to be visible to the reader, so
  // they get an explicit (possibly zero) objective term.
  std::vector<Term> objective;
  for (int j = 0; j < n; ++j) {
    const double c = model.col(j).objective;
    if (c != 0.0 || !in_row[j]) objective.push_back({ColId{j}, c});
  }

  out << "\\ flexsched LP export: " << n << " columns, " << model.num_rows() << " rows, "
      << model.num_binaries() << " binaries\n";
  out << "\\ offset " << format_number(model.objective_offset()) << '\n';
  out << (model.objective_sense() == ObjectiveSense::kMaximize ? "Maximize\n" : "Minimize\n");
  out << " obj:";
  write_terms(out, objective, model);
  out << "\nSubject To\n";
  for (const Row& r : model.rows()) {
    out << ' ' << r.name << ':';
    if (r.terms.empty()) {
      // keep the row shape valid; 0 x <= rhs with the first column
      if (n > 0) out << " + 0 " << model.col(0).name;
    }
    write_terms(out, r.terms, model);
    out << ' ' << sense_token(r.sense) << ' ' << format_number(r.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < n; ++j) {
    const Column& c = model.col(j);
    const double lo = c.lower, hi = c.upper;
    if (c.is_binary && lo == 0.0 && hi == 1.0) continue;
    if (!c.is_binary && lo == 0.0 && hi == kInf) continue;
    if (lo == -kInf && hi == kInf) {
      out << ' ' << c.name << " free\n";
    } else if (lo == hi) {
      out << ' ' << c.name << " = " << format_number(lo) << '\n';
    } else if (lo == -kInf) {
      out << " -inf <= " << c.name << " <= " << format_number(hi) << '\n';
    } else if (hi == kInf) {
      out << ' ' << c.name << " >= " << format_number(lo) << '\n';
    } else {
      out << ' ' << format_number(lo) << " <= " << c.name << " <= " << format_number(hi) << '\n';
    }
  }
  out << "Binaries\n";
  for (int j = 0; j < n; ++j) {
    if (model.col(j).is_binary) out << ' ' << model.col(j).name << '\n';
  }
  out << "End\n";
}

void export_model(const MilpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_lp(model, out);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

void write_solution(const MilpModel& model, const Solution& solution, std::ostream& out) {
  out << "# status " << to_string(solution.status) << '\n';
  if (!solution.has_values) return;
  out << "# objective " << format_number(solution.objective) << '\n';
  for (int j = 0; j < model.num_cols(); ++j) {
    out << model.col(j).name << ' ' << format_number(solution.values[j]) << '\n';
  }
}

void export_solution(const MilpModel& model, const Solution& solution,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_solution(model, solution, out);
  if (!out) throw IoError("write failed: " + path.string());
}

Solution read_solution(const MilpModel& model, std::istream& in, double tolerance) {
  const int n = model.num_cols();
  std::vector<double> values(n, 0.0);
  std::vector<char> seen(n, 0);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string name, value_text, extra;
    if (!(fields >> name)) continue;
    if (!(fields >> value_text) || (fields >> extra)) {
      throw SolutionRejected("line " + std::to_string(line_no) + ": expected 'name value'", name);
    }
    const int j = model.find_column(name);
    if (j < 0) throw SolutionRejected("unknown column '" + name + "'", name);
    if (seen[j]) throw SolutionRejected("column '" + name + "' listed twice", name);
    double v = 0.0;
    const char* first = value_text.data();
    const char* last = first + value_text.size();
    if (*first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
      throw SolutionRejected("line " + std::to_string(line_no) + ": bad value '" + value_text + "'", name);
    }
    values[j] = v;
    seen[j] = 1;
  }
  for (int j = 0; j < n; ++j) {
    if (!seen[j]) throw SolutionRejected("solution is missing column '" + model.col(j).name + "'",
                                         model.col(j).name);
  }

  double worst = tolerance;
  std::string worst_name;
  std::string worst_kind;
  for (int j = 0; j < n; ++j) {
    const Column& c = model.col(j);
    double viol = std::max(c.lower - values[j], values[j] - c.upper);
    if (c.is_binary) viol = std::max(viol, std::abs(values[j] - std::round(values[j])));
    if (viol > worst) {
      worst = viol;
      worst_name = c.name;
      worst_kind = "column";
    }
  }
  Solution sol;
  sol.row_activity.resize(model.num_rows());
  for (int i = 0; i < model.num_rows(); ++i) {
    const Row& r = model.row(i);
    const double act = model.row_activity(i, values);
    sol.row_activity[i] = act;
    double viol = 0.0;
    switch (r.sense) {
      case Sense::kLessEqual: viol = act - r.rhs; break;
      case Sense::kGreaterEqual: viol = r.rhs - act; break;
      case Sense::kEqual: viol = std::abs(act - r.rhs); break;
    }
    if (viol > worst) {
      worst = viol;
      worst_name = r.name;
      worst_kind = "row";
    }
  }
  if (!worst_name.empty()) {
    throw SolutionRejected("infeasible solution: " + worst_kind + " '" + worst_name +
                               "' violated by " + format_number(worst),
                           worst_name);
  }
  sol.status = SolveStatus::kOptimal;
  sol.has_values = true;
  sol.values = std::move(values);
  sol.objective = model.evaluate_objective(sol.values);
  return sol;
}

Solution import_solution(const MilpModel& model, const std::filesystem::path& path, double tolerance) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_solution(model, in, tolerance);
}

}  // namespace flexsched::milp
