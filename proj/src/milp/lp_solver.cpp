#include "flexsched/milp/lp_solver.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "sparse_lu.hpp"

namespace flexsched::milp {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kInitialArtificialBound = 1e7;
constexpr double kMaxArtificialBound = 1e13;
constexpr int kDegenerateBeforeBland = 150;

// Column r of an elementary matrix E with E^{-1} applied in the product form.
struct Eta {
  int position = 0;
  double pivot = 1.0;
  std::vector<int> index;
  std::vector<double> value;
};

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kLimit: return "limit";
    case SolveStatus::kNumerical: return "numerical";
  }
  return "unknown";
}

struct LpEngine::Impl {
  LpOptions opt;
  int n = 0;  // structural columns
  int m = 0;  // rows
  int total = 0;
  double scale = 1.0;  // +1 minimize, -1 maximize
  double offset = 0.0;

  std::vector<int> col_start, col_row;
  std::vector<double> col_val;
  std::vector<int> row_start, row_col;
  std::vector<double> row_val;

  std::vector<double> lo, hi, cost;
  std::vector<VarStatus> status;
  std::vector<double> x;
  std::vector<double> d;
  std::vector<double> y;
  std::vector<int> head;
  std::vector<int> position;
  std::vector<double> weight;
  std::vector<double> infeas;  // primal infeasibility per basis position

  detail::SparseLu lu;
  std::vector<Eta> etas;
  bool factored = false;
  bool primal_dirty = true;
  double artificial = kInitialArtificialBound;

  int64_t iterations = 0;
  int64_t refactorizations = 0;
  std::vector<std::string> warnings;

  // scratch
  Eigen::VectorXd work;
  Eigen::VectorXd spare;
  std::vector<double> alpha_row;
  std::vector<int> alpha_touched;
  std::vector<char> alpha_mark;
  std::vector<int> nonzeros;

  Impl(const MilpModel& model, LpOptions options) : opt(options) {
    n = model.num_cols();
    m = model.num_rows();
    total = n + m;
    scale = model.objective_sense() == ObjectiveSense::kMaximize ? -1.0 : 1.0;
    offset = model.objective_offset();

    lo.resize(total);
    hi.resize(total);
    cost.assign(total, 0.0);
    for (int j = 0; j < n; ++j) {
      const Column& c = model.col(j);
      lo[j] = c.lower;
      hi[j] = c.upper;
      cost[j] = scale * c.objective;
    }
    std::vector<int> count(n, 0);
    row_start.assign(m + 1, 0);
    for (int i = 0; i < m; ++i) {
      const Row& r = model.row(i);
      switch (r.sense) {
        case Sense::kLessEqual: lo[n + i] = -kInf; hi[n + i] = r.rhs; break;
        case Sense::kGreaterEqual: lo[n + i] = r.rhs; hi[n + i] = kInf; break;
        case Sense::kEqual: lo[n + i] = r.rhs; hi[n + i] = r.rhs; break;
      }
      row_start[i + 1] = row_start[i] + static_cast<int>(r.terms.size());
      for (const Term& t : r.terms) {
        row_col.push_back(t.col.value);
        row_val.push_back(t.coef);
        ++count[t.col.value];
      }
    }
    col_start.assign(n + 1, 0);
    for (int j = 0; j < n; ++j) col_start[j + 1] = col_start[j] + count[j];
    col_row.resize(row_col.size());
    col_val.resize(row_col.size());
    std::vector<int> fill(col_start.begin(), col_start.end() - 1);
    for (int i = 0; i < m; ++i) {
      for (int k = row_start[i]; k < row_start[i + 1]; ++k) {
        int j = row_col[k];
        col_row[fill[j]] = i;
        col_val[fill[j]] = row_val[k];
        ++fill[j];
      }
    }
    alpha_row.assign(total, 0.0);
    alpha_mark.assign(total, 0);
    work.resize(m);
    set_slack_basis();
  }

  // ---- basis bookkeeping -------------------------------------------------

  double nonbasic_value(int j, VarStatus s) const {
    switch (s) {
      case VarStatus::kAtLower: return std::isfinite(lo[j]) ? lo[j] : -artificial;
      case VarStatus::kAtUpper: return std::isfinite(hi[j]) ? hi[j] : artificial;
      case VarStatus::kFree: return 0.0;
      case VarStatus::kBasic: break;
    }
    return x[j];
  }

  VarStatus default_status(int j) const {
    if (std::isfinite(lo[j])) return VarStatus::kAtLower;
    if (std::isfinite(hi[j])) return VarStatus::kAtUpper;
    return VarStatus::kFree;
  }

  void set_slack_basis() {
    status.assign(total, VarStatus::kAtLower);
    x.assign(total, 0.0);
    d.assign(total, 0.0);
    y.assign(m, 0.0);
    head.resize(m);
    position.assign(total, -1);
    for (int j = 0; j < n; ++j) {
      status[j] = default_status(j);
      x[j] = nonbasic_value(j, status[j]);
    }
    for (int i = 0; i < m; ++i) {
      status[n + i] = VarStatus::kBasic;
      head[i] = n + i;
      position[n + i] = i;
    }
    weight.assign(m, 1.0);
    factored = false;
    primal_dirty = true;
  }

  bool is_artificial(int j) const {
    return (status[j] == VarStatus::kAtLower && !std::isfinite(lo[j])) ||
           (status[j] == VarStatus::kAtUpper && !std::isfinite(hi[j]));
  }

  // ---- linear algebra ----------------------------------------------------

  bool refactor() {
    ++refactorizations;
    etas.clear();
    factored = false;
    if (m == 0) {
      factored = true;
      return true;
    }
    // Rank deficiency is repaired by swapping slacks of uncovered rows into
    // the basis; a few rounds always reach a nonsingular basis.
    for (int round = 0; round < 4; ++round) {
      std::vector<int> start(m + 1, 0), index;
      std::vector<double> value;
      index.reserve(static_cast<size_t>(m) * 2);
      value.reserve(static_cast<size_t>(m) * 2);
      for (int k = 0; k < m; ++k) {
        const int j = head[k];
        if (j >= n) {
          index.push_back(j - n);
          value.push_back(-1.0);
        } else {
          for (int e = col_start[j]; e < col_start[j + 1]; ++e) {
            index.push_back(col_row[e]);
            value.push_back(col_val[e]);
          }
        }
        start[k + 1] = static_cast<int>(index.size());
      }
      if (lu.factorize(m, start, index, value)) {
        factored = true;
        return true;
      }
      const auto& rows = lu.unpivoted_rows();
      const auto& cols = lu.unpivoted_cols();
      for (size_t t = 0; t < cols.size() && t < rows.size(); ++t) {
        const int k = cols[t];
        const int leaving = head[k];
        const int entering = n + rows[t];
        position[leaving] = -1;
        status[leaving] = nearest_bound_status(leaving);
        x[leaving] = nonbasic_value(leaving, status[leaving]);
        status[entering] = VarStatus::kBasic;
        position[entering] = k;
        head[k] = entering;
        weight[k] = 1.0;
      }
      primal_dirty = true;
      warnings.push_back("singular basis repaired with " + std::to_string(cols.size()) + " slack columns");
    }
    return false;
  }

  VarStatus nearest_bound_status(int j) const {
    const bool has_lo = std::isfinite(lo[j]), has_hi = std::isfinite(hi[j]);
    if (has_lo && has_hi) return std::abs(x[j] - lo[j]) <= std::abs(x[j] - hi[j]) ? VarStatus::kAtLower : VarStatus::kAtUpper;
    if (has_lo) return VarStatus::kAtLower;
    if (has_hi) return VarStatus::kAtUpper;
    return VarStatus::kFree;
  }

  // B w = v, v indexed by row, result indexed by basis position.
  void ftran(Eigen::VectorXd& v) {
    if (m == 0) return;
    spare.resize(m);
    lu.ftran(v.data(), spare.data());
    v.swap(spare);
    for (const Eta& eta : etas) {
      double vr = v[eta.position] / eta.pivot;
      if (vr != 0.0) {
        for (size_t k = 0; k < eta.index.size(); ++k) v[eta.index[k]] -= eta.value[k] * vr;
      }
      v[eta.position] = vr;
    }
  }

  // B' w = v, v indexed by basis position, result indexed by row.
  void btran(Eigen::VectorXd& v) {
    if (m == 0) return;
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double s = v[it->position];
      for (size_t k = 0; k < it->index.size(); ++k) s -= it->value[k] * v[it->index[k]];
      v[it->position] = s / it->pivot;
    }
    spare.resize(m);
    lu.btran(v.data(), spare.data());
    v.swap(spare);
  }

  void load_column(int j, Eigen::VectorXd& v) const {
    v.setZero();
    if (j >= n) {
      v[j - n] = -1.0;
    } else {
      for (int e = col_start[j]; e < col_start[j + 1]; ++e) v[col_row[e]] = col_val[e];
    }
  }

  double column_dot(int j, const Eigen::VectorXd& rowvec) const {
    if (j >= n) return -rowvec[j - n];
    double s = 0.0;
    for (int e = col_start[j]; e < col_start[j + 1]; ++e) s += col_val[e] * rowvec[col_row[e]];
    return s;
  }

  void compute_primal() {
    work.setZero();
    for (int j = 0; j < total; ++j) {
      if (status[j] == VarStatus::kBasic) continue;
      double v = x[j];
      if (v == 0.0) continue;
      if (j >= n) {
        work[j - n] += v;
      } else {
        for (int e = col_start[j]; e < col_start[j + 1]; ++e) work[col_row[e]] -= col_val[e] * v;
      }
    }
    ftran(work);
    for (int k = 0; k < m; ++k) x[head[k]] = work[k];
    infeas.resize(m);
    for (int k = 0; k < m; ++k) infeas[k] = primal_infeasibility(head[k]);
    primal_dirty = false;
  }

  void compute_duals() {
    for (int k = 0; k < m; ++k) work[k] = cost[head[k]];
    btran(work);
    for (int i = 0; i < m; ++i) y[i] = work[i];
    for (int j = 0; j < total; ++j) {
      d[j] = status[j] == VarStatus::kBasic ? 0.0 : cost[j] - column_dot(j, work);
    }
  }

  // Moves nonbasic variables to the bound matching the sign of their reduced
  // cost. Returns true if any value changed.
  bool make_dual_feasible() {
    bool changed = false;
    const double tol = opt.dual_tolerance;
    for (int j = 0; j < total; ++j) {
      if (status[j] == VarStatus::kBasic) continue;
      VarStatus want = status[j];
      if (lo[j] == hi[j]) {
        want = VarStatus::kAtLower;
      } else if (d[j] > tol) {
        want = VarStatus::kAtLower;
      } else if (d[j] < -tol) {
        want = VarStatus::kAtUpper;
      } else if (status[j] == VarStatus::kFree && std::isfinite(lo[j])) {
        want = VarStatus::kAtLower;
      } else if (status[j] == VarStatus::kFree && std::isfinite(hi[j])) {
        want = VarStatus::kAtUpper;
      }
      double v = nonbasic_value(j, want);
      if (want != status[j] || v != x[j]) {
        status[j] = want;
        x[j] = v;
        changed = true;
      }
    }
    if (changed) primal_dirty = true;
    return changed;
  }

  bool recompute_all() {
    if (!refactor()) {
      warnings.push_back("singular basis; restarting from the slack basis");
      set_slack_basis();
      if (!refactor()) return false;
    }
    compute_primal();
    compute_duals();
    return true;
  }

  double primal_infeasibility(int j) const {
    const double v = x[j];
    if (v < lo[j] - opt.primal_tolerance * (1.0 + std::abs(lo[j]))) return lo[j] - v;
    if (v > hi[j] + opt.primal_tolerance * (1.0 + std::abs(hi[j]))) return v - hi[j];
    return 0.0;
  }

  // ---- pivot row ---------------------------------------------------------

  void compute_pivot_row(const Eigen::VectorXd& rho) {
    for (int j : alpha_touched) {
      alpha_row[j] = 0.0;
      alpha_mark[j] = 0;
    }
    alpha_touched.clear();
    auto touch = [&](int j, double v) {
      if (!alpha_mark[j]) {
        alpha_mark[j] = 1;
        alpha_touched.push_back(j);
      }
      alpha_row[j] += v;
    };
    for (int i = 0; i < m; ++i) {
      const double r = rho[i];
      if (r == 0.0) continue;
      if (status[n + i] != VarStatus::kBasic) touch(n + i, -r);
      for (int e = row_start[i]; e < row_start[i + 1]; ++e) {
        int j = row_col[e];
        if (status[j] != VarStatus::kBasic) touch(j, row_val[e] * r);
      }
    }
  }

  // ---- main loop ---------------------------------------------------------

  SolveStatus solve() {
    const auto started = Clock::now();
    if (!factored) {
      if (!recompute_all()) return SolveStatus::kNumerical;
    } else {
      if (primal_dirty) compute_primal();
    }
    if (make_dual_feasible()) compute_primal();

    int degenerate = 0;
    int verify_rounds = 0;
    int instability_events = 0;
    Eigen::VectorXd rho(m), column(m), tau(m);

    while (true) {
      if (iterations >= opt.iteration_limit) return SolveStatus::kLimit;
      if ((iterations & 63) == 0 &&
          std::chrono::duration<double>(Clock::now() - started).count() > opt.time_limit_seconds) {
        return SolveStatus::kLimit;
      }
      const bool bland = degenerate > kDegenerateBeforeBland;

      // Leaving row: dual steepest edge, or smallest index under Bland's rule.
      int r = -1;
      double best = 0.0;
      for (int k = 0; k < m; ++k) {
        const double v = infeas[k];
        if (v <= 0.0) continue;
        if (bland) {
          if (r < 0 || head[k] < head[r]) r = k;
        } else {
          const double score = v * v / weight[k];
          if (score > best) {
            best = score;
            r = k;
          }
        }
      }

      if (r < 0) {
        // Primal feasible under the current (possibly artificial) bounds.
        bool adjusted = false;
        bool widen = false;
        for (int j = 0; j < total; ++j) {
          if (!is_artificial(j)) continue;
          if (std::abs(d[j]) <= opt.dual_tolerance) {
            VarStatus s = default_status(j);
            status[j] = s;
            x[j] = nonbasic_value(j, s);
            adjusted = true;
          } else {
            widen = true;
          }
        }
        if (widen) {
          if (artificial >= kMaxArtificialBound) return SolveStatus::kUnbounded;
          artificial *= 100.0;
          for (int j = 0; j < total; ++j) {
            if (is_artificial(j)) x[j] = nonbasic_value(j, status[j]);
          }
          adjusted = true;
        }
        if (adjusted) {
          compute_primal();
          continue;
        }
        // Clean recomputation before declaring optimality.
        if (verify_rounds < 4) {
          ++verify_rounds;
          if (!recompute_all()) return SolveStatus::kNumerical;
          bool flipped = make_dual_feasible();
          if (flipped) compute_primal();
          bool feasible = true;
          for (int k = 0; k < m; ++k) {
            if (primal_infeasibility(head[k]) > 0.0) {
              feasible = false;
              break;
            }
          }
          if (!feasible || flipped) continue;
        }
        return SolveStatus::kOptimal;
      }

      const int p = head[r];
      const bool to_lower = x[p] < lo[p];
      const double target = to_lower ? lo[p] : hi[p];
      const double delta = x[p] - target;

      rho.setZero();
      rho[r] = 1.0;
      btran(rho);
      compute_pivot_row(rho);

      // Two-pass Harris ratio test on the dual step.
      const double dtol = opt.dual_tolerance;
      const double ptol = opt.pivot_tolerance;
      double bound = kInf;
      for (int j : alpha_touched) {
        if (lo[j] == hi[j]) continue;
        const double ah = to_lower ? -alpha_row[j] : alpha_row[j];
        switch (status[j]) {
          case VarStatus::kAtLower:
            if (ah > ptol) bound = std::min(bound, (std::max(d[j], 0.0) + dtol) / ah);
            break;
          case VarStatus::kAtUpper:
            if (ah < -ptol) bound = std::min(bound, (std::min(d[j], 0.0) - dtol) / ah);
            break;
          case VarStatus::kFree:
            if (std::abs(ah) > ptol) bound = std::min(bound, (std::abs(d[j]) + dtol) / std::abs(ah));
            break;
          case VarStatus::kBasic: break;
        }
      }
      int q = -1;
      double q_ratio = 0.0;
      double q_abs = 0.0;
      if (std::isfinite(bound)) {
        for (int j : alpha_touched) {
          if (lo[j] == hi[j]) continue;
          const double ah = to_lower ? -alpha_row[j] : alpha_row[j];
          double ratio = 0.0;
          bool eligible = false;
          switch (status[j]) {
            case VarStatus::kAtLower:
              eligible = ah > ptol;
              ratio = std::max(d[j], 0.0) / ah;
              break;
            case VarStatus::kAtUpper:
              eligible = ah < -ptol;
              ratio = std::min(d[j], 0.0) / ah;
              break;
            case VarStatus::kFree:
              eligible = std::abs(ah) > ptol;
              ratio = std::abs(d[j]) / std::abs(ah);
              break;
            case VarStatus::kBasic: break;
          }
          if (!eligible) continue;
          if (bland) {
            // exact minimum ratio, ties by lowest index
            if (q < 0 || ratio < q_ratio - 1e-12 || (ratio <= q_ratio + 1e-12 && j < q)) {
              q = j;
              q_ratio = ratio;
              q_abs = std::abs(ah);
            }
          } else if (ratio <= bound && std::abs(ah) > q_abs) {
            q = j;
            q_ratio = ratio;
            q_abs = std::abs(ah);
          }
        }
      }

      if (q < 0) {
        // Dual ray. Infeasible unless an artificially bounded column can still
        // move outward and reduce the violation.
        bool outward = false;
        for (int j : alpha_touched) {
          if (!is_artificial(j)) continue;
          const double ah = to_lower ? -alpha_row[j] : alpha_row[j];
          if ((status[j] == VarStatus::kAtLower && ah < -ptol) ||
              (status[j] == VarStatus::kAtUpper && ah > ptol)) {
            outward = true;
            break;
          }
        }
        if (outward && artificial < kMaxArtificialBound) {
          artificial *= 100.0;
          for (int j = 0; j < total; ++j) {
            if (is_artificial(j)) x[j] = nonbasic_value(j, status[j]);
          }
          compute_primal();
          continue;
        }
        return SolveStatus::kInfeasible;
      }

      load_column(q, column);
      ftran(column);
      const double pivot = column[r];
      const double alpha_rq = alpha_row[q];
      if (std::abs(pivot) < opt.instability_threshold ||
          std::abs(pivot - alpha_rq) > 1e-7 * (1.0 + std::abs(pivot))) {
        if (std::abs(pivot) < opt.instability_threshold) {
          warnings.push_back("numerical instability: pivot magnitude " +
                             std::to_string(std::abs(pivot)) + " below threshold");
        }
        if (++instability_events > 50) return SolveStatus::kNumerical;
        if (etas.empty()) {
          // Fresh factorization already disagrees; perturb by skipping this
          // candidate through a Bland step.
          degenerate = kDegenerateBeforeBland + 1;
        }
        if (!recompute_all()) return SolveStatus::kNumerical;
        if (make_dual_feasible()) compute_primal();
        continue;
      }

      // Dual step.
      const double t = q_ratio;
      const double theta_d = to_lower ? -t : t;
      for (int j : alpha_touched) {
        if (status[j] != VarStatus::kBasic) d[j] -= theta_d * alpha_row[j];
      }
      d[q] = 0.0;

      // Steepest edge weights need tau = B^{-1} rho.
      const double rho_norm2 = rho.squaredNorm();
      tau = rho;
      ftran(tau);

      // Primal step.
      nonzeros.clear();
      for (int k = 0; k < m; ++k) {
        if (column[k] != 0.0) nonzeros.push_back(k);
      }
      const double theta_p = delta / pivot;
      for (int k : nonzeros) x[head[k]] -= theta_p * column[k];
      x[q] += theta_p;

      for (int k : nonzeros) {
        if (k == r) continue;
        const double ratio = column[k] / pivot;
        double w = weight[k] - 2.0 * ratio * tau[k] + ratio * ratio * rho_norm2;
        weight[k] = std::max(w, ratio * ratio + 1e-12);
      }
      weight[r] = std::max(rho_norm2 / (pivot * pivot), 1e-12);

      // Basis change.
      status[p] = to_lower ? VarStatus::kAtLower : VarStatus::kAtUpper;
      x[p] = target;
      d[p] = -theta_d;
      position[p] = -1;
      status[q] = VarStatus::kBasic;
      position[q] = r;
      head[r] = q;
      for (int k : nonzeros) infeas[k] = primal_infeasibility(head[k]);

      Eta eta;
      eta.position = r;
      eta.pivot = pivot;
      for (int k : nonzeros) {
        if (k != r && std::abs(column[k]) > 1e-14) {
          eta.index.push_back(k);
          eta.value.push_back(column[k]);
        }
      }
      etas.push_back(std::move(eta));

      ++iterations;
      if (t * std::abs(delta) <= 1e-12) {
        ++degenerate;
      } else {
        degenerate = 0;
      }
      if (static_cast<int>(etas.size()) >= opt.refactor_interval) {
        if (!recompute_all()) return SolveStatus::kNumerical;
        if (make_dual_feasible()) compute_primal();
      }
    }
  }

  double objective_internal() const {
    double v = 0.0;
    for (int j = 0; j < n; ++j) v += cost[j] * x[j];
    return v;
  }

  double dual_objective_internal() const {
    double v = 0.0;
    for (int j = 0; j < total; ++j) {
      if (status[j] != VarStatus::kBasic) v += d[j] * x[j];
    }
    return v;
  }
};

LpEngine::LpEngine(const MilpModel& model, LpOptions options)
    : impl_(std::make_unique<Impl>(model, options)) {}

LpEngine::~LpEngine() = default;

void LpEngine::set_column_bounds(int col, double lower, double upper) {
  Impl& s = *impl_;
  s.lo[col] = lower;
  s.hi[col] = upper;
  if (s.status[col] == VarStatus::kBasic) {
    if (!s.primal_dirty && s.position[col] >= 0 && s.position[col] < static_cast<int>(s.infeas.size())) {
      s.infeas[s.position[col]] = s.primal_infeasibility(col);
    }
  } else {
    VarStatus st = s.status[col];
    if (st == VarStatus::kFree || lower == upper) st = s.default_status(col);
    s.status[col] = st;
    double v = s.nonbasic_value(col, st);
    if (v != s.x[col]) {
      s.x[col] = v;
      s.primal_dirty = true;
    }
  }
}

double LpEngine::column_lower(int col) const { return impl_->lo[col]; }
double LpEngine::column_upper(int col) const { return impl_->hi[col]; }

SolveStatus LpEngine::solve() { return impl_->solve(); }

BasisState LpEngine::basis() const { return {impl_->status}; }

void LpEngine::restore_basis(const BasisState& basis) {
  Impl& s = *impl_;
  int basic = 0;
  for (VarStatus st : basis.status) basic += st == VarStatus::kBasic;
  if (static_cast<int>(basis.status.size()) != s.total || basic != s.m) {
    s.set_slack_basis();
    return;
  }
  s.status = basis.status;
  s.position.assign(s.total, -1);
  int k = 0;
  for (int j = 0; j < s.total; ++j) {
    if (s.status[j] == VarStatus::kBasic) {
      s.head[k] = j;
      s.position[j] = k;
      ++k;
    } else {
      if (s.status[j] == VarStatus::kFree &&
          (std::isfinite(s.lo[j]) || std::isfinite(s.hi[j]))) {
        s.status[j] = s.default_status(j);
      }
      s.x[j] = s.nonbasic_value(j, s.status[j]);
    }
  }
  s.weight.assign(s.m, 1.0);
  s.factored = false;
  s.primal_dirty = true;
}

void LpEngine::reset_to_slack_basis() { impl_->set_slack_basis(); }

double LpEngine::objective() const {
  return impl_->scale * impl_->objective_internal() + impl_->offset;
}

std::vector<double> LpEngine::column_values() const {
  return {impl_->x.begin(), impl_->x.begin() + impl_->n};
}

std::vector<double> LpEngine::row_activities() const {
  return {impl_->x.begin() + impl_->n, impl_->x.end()};
}

std::vector<double> LpEngine::row_duals() const {
  std::vector<double> out(impl_->y);
  for (double& v : out) v *= impl_->scale;
  return out;
}

std::vector<double> LpEngine::reduced_costs() const {
  std::vector<double> out(impl_->d.begin(), impl_->d.begin() + impl_->n);
  for (double& v : out) v *= impl_->scale;
  return out;
}

double LpEngine::dual_objective() const {
  return impl_->scale * impl_->dual_objective_internal() + impl_->offset;
}

int64_t LpEngine::iterations() const { return impl_->iterations; }
int64_t LpEngine::refactorizations() const { return impl_->refactorizations; }
const std::vector<std::string>& LpEngine::warnings() const { return impl_->warnings; }

Solution solve_lp(const MilpModel& model, const LpOptions& options) {
  model.validate();
  const auto started = Clock::now();
  LpEngine engine(model, options);
  Solution sol;
  sol.status = engine.solve();
  sol.stats.iterations = engine.iterations();
  sol.stats.refactorizations = engine.refactorizations();
  sol.warnings = engine.warnings();
  if (sol.status == SolveStatus::kOptimal) {
    sol.has_values = true;
    sol.values = engine.column_values();
    sol.objective = engine.objective();
    sol.row_activity = engine.row_activities();
    sol.row_duals = engine.row_duals();
    sol.reduced_costs = engine.reduced_costs();
    sol.dual_objective = engine.dual_objective();
    sol.stats.best_bound = sol.dual_objective;
    sol.stats.gap = std::abs(sol.objective - sol.dual_objective);
  }
  sol.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return sol;
}

}  // namespace flexsched::milp
