#include "sparse_lu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flexsched::milp::detail {
namespace {

constexpr double kThreshold = 0.1;    // relative column threshold
constexpr double kAbsolute = 1e-11;   // smallest acceptable pivot
constexpr int kSearchCandidates = 4;

// Doubly linked buckets of indices keyed by count.
class Buckets {
 public:
  void init(int n, int max_count) {
    head_.assign(max_count + 2, -1);
    next_.assign(n, -1);
    prev_.assign(n, -1);
    key_.assign(n, -1);
  }
  void insert(int i, int count) {
    key_[i] = count;
    prev_[i] = -1;
    next_[i] = head_[count];
    if (head_[count] >= 0) prev_[head_[count]] = i;
    head_[count] = i;
  }
  void remove(int i) {
    if (key_[i] < 0) return;
    if (prev_[i] >= 0) next_[prev_[i]] = next_[i];
    else head_[key_[i]] = next_[i];
    if (next_[i] >= 0) prev_[next_[i]] = prev_[i];
    key_[i] = -1;
  }
  void move(int i, int count) {
    remove(i);
    insert(i, count);
  }
  int first(int count) const { return head_[count]; }
  int next(int i) const { return next_[i]; }
  int max_count() const { return static_cast<int>(head_.size()) - 2; }

 private:
  std::vector<int> head_, next_, prev_, key_;
};

}  // namespace

bool SparseLu::factorize(int m, const std::vector<int>& col_start, const std::vector<int>& row_index,
                         const std::vector<double>& value) {
  m_ = m;
  pivot_row_.clear();
  pivot_col_.clear();
  pivot_value_.clear();
  l_step_.clear();
  l_start_.assign(1, 0);
  l_index_.clear();
  l_value_.clear();
  u_row_start_.assign(1, 0);
  u_col_.clear();
  u_value_.clear();
  unpivoted_rows_.clear();
  unpivoted_cols_.clear();
  step_of_col_.assign(m, -1);

  rows_.resize(m);
  cols_.resize(m);
  auto& rows = rows_;
  auto& cols = cols_;
  for (int i = 0; i < m; ++i) {
    rows[i].clear();
    cols[i].clear();
  }
  for (int j = 0; j < m; ++j) {
    for (int e = col_start[j]; e < col_start[j + 1]; ++e) {
      if (value[e] == 0.0) continue;
      rows[row_index[e]].push_back({j, value[e]});
      cols[j].push_back(row_index[e]);
    }
  }
  Buckets row_buckets, col_buckets;
  row_buckets.init(m, m);
  col_buckets.init(m, m);
  for (int i = 0; i < m; ++i) row_buckets.insert(i, static_cast<int>(rows[i].size()));
  for (int j = 0; j < m; ++j) col_buckets.insert(j, static_cast<int>(cols[j].size()));
  int max_count = 0;
  for (int i = 0; i < m; ++i) max_count = std::max(max_count, static_cast<int>(rows[i].size()));
  for (int j = 0; j < m; ++j) max_count = std::max(max_count, static_cast<int>(cols[j].size()));
  std::vector<char> row_done(m, 0), col_done(m, 0);
  std::vector<int> where(m, -1);  // scatter map: column -> index in the row being updated

  auto entry_value = [&](int i, int j) {
    for (const Entry& e : rows[i]) {
      if (e.col == j) return e.value;
    }
    return 0.0;
  };
  auto column_max = [&](int j) {
    double mx = 0.0;
    for (int i : cols[j]) mx = std::max(mx, std::abs(entry_value(i, j)));
    return mx;
  };

  for (int k = 0; k < m; ++k) {
    int best_row = -1, best_col = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    double best_abs = 0.0;
    int examined = 0;
    auto consider = [&](int i, int j, double a, double cost) {
      if (cost < best_cost || (cost == best_cost && a > best_abs)) {
        best_cost = cost;
        best_abs = a;
        best_row = i;
        best_col = j;
      }
    };
    for (int c = 1; c <= max_count; ++c) {
      for (int j = col_buckets.first(c); j >= 0; j = col_buckets.next(j)) {
        const double cmax = column_max(j);
        for (int i : cols[j]) {
          const double a = std::abs(entry_value(i, j));
          if (a < kAbsolute || a < kThreshold * cmax) continue;
          consider(i, j, a, static_cast<double>(rows[i].size() - 1) * (c - 1));
        }
        ++examined;
        if (best_row >= 0 && (best_cost == 0.0 || examined >= kSearchCandidates)) goto chosen;
      }
      for (int i = row_buckets.first(c); i >= 0; i = row_buckets.next(i)) {
        for (const Entry& e : rows[i]) {
          const double a = std::abs(e.value);
          if (a < kAbsolute || a < kThreshold * column_max(e.col)) continue;
          consider(i, e.col, a, static_cast<double>(c - 1) * (cols[e.col].size() - 1));
        }
        ++examined;
        if (best_row >= 0 && (best_cost == 0.0 || examined >= kSearchCandidates)) goto chosen;
      }
      // anything left has row and column counts above c
      if (best_row >= 0 && best_cost <= static_cast<double>(c) * c) break;
    }
  chosen:
    if (best_row < 0) {
      for (int i = 0; i < m; ++i) if (!row_done[i]) unpivoted_rows_.push_back(i);
      for (int j = 0; j < m; ++j) if (!col_done[j]) unpivoted_cols_.push_back(j);
      return false;
    }

    const int p = best_row, q = best_col;
    const double piv = entry_value(p, q);
    pivot_row_.push_back(p);
    pivot_col_.push_back(q);
    pivot_value_.push_back(piv);
    step_of_col_[q] = k;
    row_done[p] = 1;
    col_done[q] = 1;
    row_buckets.remove(p);
    col_buckets.remove(q);

    // U row k: the rest of the pivot row; row p leaves the active columns
    std::vector<Entry> urow;
    for (const Entry& e : rows[p]) {
      if (e.col == q) continue;
      urow.push_back(e);
      auto& cj = cols[e.col];
      cj.erase(std::find(cj.begin(), cj.end(), p));
    }
    for (const Entry& e : urow) {
      u_col_.push_back(e.col);
      u_value_.push_back(e.value);
    }
    u_row_start_.push_back(static_cast<int>(u_col_.size()));

    // eliminate column q from the remaining rows
    bool any = false;
    for (int i : cols[q]) {
      if (i == p) continue;
      auto& ri = rows[i];
      double aiq = 0.0;
      for (size_t t = 0; t < ri.size(); ++t) {
        if (ri[t].col == q) {
          aiq = ri[t].value;
          ri[t] = ri.back();
          ri.pop_back();
          break;
        }
      }
      const double l = aiq / piv;
      if (l == 0.0) continue;
      any = true;
      l_index_.push_back(i);
      l_value_.push_back(l);
      for (size_t t = 0; t < ri.size(); ++t) where[ri[t].col] = static_cast<int>(t);
      for (const Entry& e : urow) {
        if (where[e.col] >= 0) {
          ri[where[e.col]].value -= l * e.value;
        } else {
          ri.push_back({e.col, -l * e.value});
          cols[e.col].push_back(i);
        }
      }
      for (const Entry& e : ri) where[e.col] = -1;
      row_buckets.move(i, static_cast<int>(ri.size()));
      max_count = std::max(max_count, static_cast<int>(ri.size()));
    }
    if (any) {
      l_step_.push_back(k);
      l_start_.push_back(static_cast<int>(l_index_.size()));
    }
    for (const Entry& e : urow) {
      col_buckets.move(e.col, static_cast<int>(cols[e.col].size()));
      max_count = std::max(max_count, static_cast<int>(cols[e.col].size()));
    }
    cols[q].clear();
    rows[p].clear();
  }

  // column-wise copy of U indexed by column step
  ut_start_.assign(m + 1, 0);
  for (int e : u_col_) ++ut_start_[step_of_col_[e] + 1];
  for (int s = 0; s < m; ++s) ut_start_[s + 1] += ut_start_[s];
  ut_step_.resize(u_col_.size());
  ut_value_.resize(u_col_.size());
  std::vector<int> fill(ut_start_.begin(), ut_start_.end() - 1);
  for (int k = 0; k < m; ++k) {
    for (int e = u_row_start_[k]; e < u_row_start_[k + 1]; ++e) {
      const int s = step_of_col_[u_col_[e]];
      ut_step_[fill[s]] = k;
      ut_value_[fill[s]] = u_value_[e];
      ++fill[s];
    }
  }
  return true;
}

void SparseLu::ftran(double* v, double* out) const {
  for (size_t t = 0; t < l_step_.size(); ++t) {
    const double b = v[pivot_row_[l_step_[t]]];
    if (b == 0.0) continue;
    for (int e = l_start_[t]; e < l_start_[t + 1]; ++e) v[l_index_[e]] -= l_value_[e] * b;
  }
  for (int k = m_ - 1; k >= 0; --k) {
    const double x = v[pivot_row_[k]] / pivot_value_[k];
    out[pivot_col_[k]] = x;
    if (x == 0.0) continue;
    for (int e = ut_start_[k]; e < ut_start_[k + 1]; ++e) v[pivot_row_[ut_step_[e]]] -= ut_value_[e] * x;
  }
}

void SparseLu::btran(double* v, double* out) const {
  for (int k = 0; k < m_; ++k) {
    const double z = v[pivot_col_[k]] / pivot_value_[k];
    out[pivot_row_[k]] = z;
    if (z == 0.0) continue;
    for (int e = u_row_start_[k]; e < u_row_start_[k + 1]; ++e) v[u_col_[e]] -= u_value_[e] * z;
  }
  for (size_t t = l_step_.size(); t-- > 0;) {
    double s = 0.0;
    for (int e = l_start_[t]; e < l_start_[t + 1]; ++e) s += l_value_[e] * out[l_index_[e]];
    out[pivot_row_[l_step_[t]]] -= s;
  }
}

}  // namespace flexsched::milp::detail
