#include "flexsched/milp/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace flexsched::milp {
namespace {

using Clock = std::chrono::steady_clock;

struct Fixing {
  int col;
  double value;
};

struct Node {
  double bound;  // minimisation form
  int64_t sequence;
  std::vector<Fixing> fixings;
  std::shared_ptr<const BasisState> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.sequence > b.sequence;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, const MilpOptions& options)
      : model_(model), options_(options), engine_(model, options.lp),
        sign_(model.objective_sense() == ObjectiveSense::kMaximize ? -1.0 : 1.0) {
    for (int j = 0; j < model.num_cols(); ++j) {
      if (model.col(j).is_binary) binaries_.push_back(j);
    }
  }

  Solution run() {
    started_ = Clock::now();
    Solution result;

    apply_fixings({});
    SolveStatus root = engine_.solve();
    if (root == SolveStatus::kNumerical) {
      engine_.reset_to_slack_basis();
      root = engine_.solve();
    }
    ++nodes_;
    if (root == SolveStatus::kInfeasible || root == SolveStatus::kUnbounded ||
        root == SolveStatus::kNumerical) {
      result.status = root;
      return finish(std::move(result));
    }
    if (root == SolveStatus::kLimit) {
      result.status = SolveStatus::kLimit;
      return finish(std::move(result));
    }

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    int64_t sequence = 0;
    double root_bound = sign_ * engine_.objective();
    global_bound_ = root_bound;

    if (!handle_solved_node({}, open, sequence, options_.dive_interval >= 0)) {
      // root was integral or pruned; nothing more to explore
    }

    bool limit = false;
    while (!open.empty()) {
      global_bound_ = open.top().bound;
      if (incumbent_ && gap_closed(global_bound_)) break;
      if (nodes_ >= options_.node_limit || elapsed() > options_.time_limit_seconds) {
        limit = true;
        break;
      }
      Node node = open.top();
      open.pop();
      if (incumbent_ && node.bound >= incumbent_value_ - prune_tolerance()) continue;

      apply_fixings(node.fixings);
      if (node.basis) engine_.restore_basis(*node.basis);
      SolveStatus st = engine_.solve();
      if (st == SolveStatus::kNumerical || st == SolveStatus::kLimit) {
        engine_.reset_to_slack_basis();
        st = engine_.solve();
      }
      ++nodes_;
      if (st == SolveStatus::kInfeasible) continue;
      if (st != SolveStatus::kOptimal) {
        warnings_.push_back("node LP ended with status " + std::string(to_string(st)) +
                            "; node discarded");
        continue;
      }
      const bool dive = options_.dive_interval > 0 && nodes_ % options_.dive_interval == 0;
      handle_solved_node(node.fixings, open, sequence, dive);
    }

    if (open.empty()) {
      global_bound_ = incumbent_ ? incumbent_value_ : global_bound_;
    } else {
      global_bound_ = std::min(global_bound_, open.top().bound);
    }
    if (incumbent_) {
      result.status = limit ? SolveStatus::kLimit : SolveStatus::kOptimal;
    } else {
      result.status = limit ? SolveStatus::kLimit : SolveStatus::kInfeasible;
    }
    return finish(std::move(result));
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - started_).count();
  }

  double prune_tolerance() const {
    return std::max(options_.absolute_gap,
                    options_.relative_gap * std::abs(incumbent_value_));
  }

  bool gap_closed(double bound) const {
    return incumbent_value_ - bound <= prune_tolerance();
  }

  void apply_fixings(const std::vector<Fixing>& fixings) {
    for (int j : binaries_) {
      const Column& c = model_.col(j);
      engine_.set_column_bounds(j, c.lower, c.upper);
    }
    for (const Fixing& f : fixings) engine_.set_column_bounds(f.col, f.value, f.value);
  }

  // Most fractional binary of the current LP point, or -1 when integral.
  int select_branch(const std::vector<double>& x) const {
    int best = -1;
    double best_dist = 0.0;
    for (int j : binaries_) {
      const double frac = x[j] - std::floor(x[j]);
      if (frac <= options_.integrality_tolerance || frac >= 1.0 - options_.integrality_tolerance) continue;
      const double dist = std::abs(frac - 0.5);
      if (best < 0 || dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    return best;
  }

  // Processes the LP currently held by the engine. Returns true if children
  // were queued.
  bool handle_solved_node(const std::vector<Fixing>& fixings,
                          std::priority_queue<Node, std::vector<Node>, NodeOrder>& open,
                          int64_t& sequence, bool dive) {
    const double value = sign_ * engine_.objective();
    if (incumbent_ && value >= incumbent_value_ - prune_tolerance()) return false;
    std::vector<double> x = engine_.column_values();
    const int branch = select_branch(x);
    if (branch < 0) {
      accept_candidate(x, fixings);
      return false;
    }
    auto basis = std::make_shared<const BasisState>(engine_.basis());
    if (dive) {
      run_dive(fixings, x);
      apply_fixings(fixings);
      engine_.restore_basis(*basis);
      if (incumbent_ && value >= incumbent_value_ - prune_tolerance()) return false;
    }
    for (double side : {0.0, 1.0}) {
      Node child;
      child.bound = value;
      child.sequence = sequence++;
      child.fixings = fixings;
      child.fixings.push_back({branch, side});
      child.basis = basis;
      open.push(std::move(child));
    }
    return true;
  }

  void accept_candidate(const std::vector<double>& x, const std::vector<Fixing>& fixings) {
    std::vector<double> values = x;
    double value = sign_ * engine_.objective();
    if (options_.polish_incumbent && !binaries_.empty()) {
      BasisState keep = engine_.basis();
      for (int j : binaries_) {
        double v = std::round(x[j]);
        engine_.set_column_bounds(j, v, v);
      }
      if (engine_.solve() == SolveStatus::kOptimal) {
        values = engine_.column_values();
        value = sign_ * engine_.objective();
      }
      apply_fixings(fixings);
      engine_.restore_basis(keep);
    }
    for (int j : binaries_) values[j] = std::round(values[j]);
    if (!incumbent_ || value < incumbent_value_) {
      incumbent_ = std::move(values);
      incumbent_value_ = value;
    }
  }

  // Fix the least fractional binary to its nearest value, reoptimise, repeat.
  void run_dive(std::vector<Fixing> fixings, std::vector<double> x) {
    for (size_t step = 0; step <= binaries_.size(); ++step) {
      int pick = -1;
      double pick_dist = 1.0;
      for (int j : binaries_) {
        const double frac = x[j] - std::floor(x[j]);
        if (frac <= options_.integrality_tolerance || frac >= 1.0 - options_.integrality_tolerance) continue;
        const double dist = std::min(frac, 1.0 - frac);
        if (dist < pick_dist) {
          pick = j;
          pick_dist = dist;
        }
      }
      if (pick < 0) {
        accept_candidate(x, fixings);
        return;
      }
      const double nearest = std::round(x[pick]);
      bool solved = false;
      for (double v : {nearest, 1.0 - nearest}) {
        engine_.set_column_bounds(pick, v, v);
        SolveStatus st = engine_.solve();
        ++dive_lps_;
        if (st == SolveStatus::kOptimal) {
          fixings.push_back({pick, v});
          solved = true;
          break;
        }
        if (st != SolveStatus::kInfeasible) return;
      }
      if (!solved) return;
      if (incumbent_ && sign_ * engine_.objective() >= incumbent_value_ - prune_tolerance()) return;
      x = engine_.column_values();
    }
  }

  Solution finish(Solution result) {
    result.stats.nodes = nodes_;
    result.stats.iterations = engine_.iterations();
    result.stats.refactorizations = engine_.refactorizations();
    result.stats.wall_seconds = elapsed();
    result.warnings = engine_.warnings();
    result.warnings.insert(result.warnings.end(), warnings_.begin(), warnings_.end());
    if (incumbent_) {
      result.has_values = true;
      result.values = *incumbent_;
      result.objective = model_.evaluate_objective(result.values);
      result.row_activity.resize(model_.num_rows());
      for (int i = 0; i < model_.num_rows(); ++i) {
        result.row_activity[i] = model_.row_activity(i, result.values);
      }
      const double bound = std::min(global_bound_, incumbent_value_);
      result.stats.best_bound = sign_ * bound;
      result.stats.gap = std::abs(incumbent_value_ - bound);
    }
    return result;
  }

  const MilpModel& model_;
  MilpOptions options_;
  LpEngine engine_;
  double sign_;
  std::vector<int> binaries_;
  std::optional<std::vector<double>> incumbent_;
  double incumbent_value_ = 0.0;
  double global_bound_ = 0.0;
  int64_t nodes_ = 0;
  int64_t dive_lps_ = 0;
  std::vector<std::string> warnings_;
  Clock::time_point started_;
};

}  // namespace

Solution solve_milp(const MilpModel& model, const MilpOptions& options) {
  model.validate();
  BranchAndBound bnb(model, options);
  return bnb.run();
}

}  // namespace flexsched::milp
