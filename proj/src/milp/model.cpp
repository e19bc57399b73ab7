#include "flexsched/milp/model.hpp"

#include <algorithm>
#include <cmath>

namespace flexsched::milp {

ColId MilpModel::add_column(std::string name, double lower, double upper,
                            double objective) {
  cols_.push_back({std::move(name), lower, upper, objective, false});
  name_index_.clear();
  return ColId{static_cast<int32_t>(cols_.size() - 1)};
}

ColId MilpModel::add_binary(std::string name, double objective) {
  cols_.push_back({std::move(name), 0.0, 1.0, objective, true});
  name_index_.clear();
  return ColId{static_cast<int32_t>(cols_.size() - 1)};
}

RowId MilpModel::add_row(std::string name, Sense sense, double rhs,
                         std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.col.value < b.col.value; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (t.col.value < 0 || t.col.value >= num_cols()) {
      throw ModelError("row '" + name + "' references an unknown column");
    }
    if (!merged.empty() && merged.back().col == t.col) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  rows_.push_back({std::move(name), sense, rhs, std::move(merged)});
  return RowId{static_cast<int32_t>(rows_.size() - 1)};
}

void MilpModel::set_bounds(ColId col, double lower, double upper) {
  Column& c = cols_.at(col.value);
  c.lower = lower;
  c.upper = upper;
}

int MilpModel::num_binaries() const {
  return static_cast<int>(std::count_if(cols_.begin(), cols_.end(),
                                        [](const Column& c) { return c.is_binary; }));
}

size_t MilpModel::num_nonzeros() const {
  size_t n = 0;
  for (const Row& r : rows_) n += r.terms.size();
  return n;
}

void MilpModel::validate() const {
  for (const Column& c : cols_) {
    if (std::isnan(c.lower) || std::isnan(c.upper) || c.lower > c.upper) {
      throw ModelError("column '" + c.name + "' has inconsistent bounds");
    }
    if (c.is_binary && (c.lower < 0.0 || c.upper > 1.0)) {
      throw ModelError("binary column '" + c.name + "' has bounds outside [0, 1]");
    }
    if (!std::isfinite(c.objective)) {
      throw ModelError("column '" + c.name + "' has a non-finite objective");
    }
  }
  for (const Row& r : rows_) {
    if (!std::isfinite(r.rhs)) {
      throw ModelError("row '" + r.name + "' has a non-finite right-hand side");
    }
    for (size_t k = 0; k < r.terms.size(); ++k) {
      if (!std::isfinite(r.terms[k].coef)) {
        throw ModelError("row '" + r.name + "' has a non-finite coefficient");
      }
      if (k > 0 && r.terms[k - 1].col.value >= r.terms[k].col.value) {
        throw ModelError("row '" + r.name + "' has duplicate or unsorted entries");
      }
    }
  }
}

double MilpModel::evaluate_objective(std::span<const double> x) const {
  double v = offset_;
  for (size_t j = 0; j < cols_.size(); ++j) v += cols_[j].objective * x[j];
  return v;
}

double MilpModel::row_activity(int row, std::span<const double> x) const {
  double v = 0.0;
  for (const Term& t : rows_.at(row).terms) v += t.coef * x[t.col.value];
  return v;
}

int MilpModel::find_column(const std::string& name) const {
  if (name_index_.size() != cols_.size()) {
    name_index_.clear();
    name_index_.reserve(cols_.size());
    for (size_t j = 0; j < cols_.size(); ++j) {
      name_index_.emplace_back(cols_[j].name, static_cast<int>(j));
    }
    std::sort(name_index_.begin(), name_index_.end());
  }
  auto it = std::lower_bound(
      name_index_.begin(), name_index_.end(), name,
      [](const std::pair<std::string, int>& e, const std::string& n) { return e.first < n; });
  if (it == name_index_.end() || it->first != name) return -1;
  return it->second;
}

}  // namespace flexsched::milp
