#include "flexsched/flow/pwl.hpp"

#include <algorithm>
#include <stdexcept>

namespace flexsched::flow {

PwlApprox::PwlApprox(double lo, double hi, int segments) : lo_(lo), hi_(hi), segments_(segments) {
  if (segments < 1) throw std::invalid_argument("PwlApprox: need at least one segment");
  if (!(lo <= hi)) throw std::invalid_argument("PwlApprox: empty interval");
  for (int k = 0; k <= segments; ++k) {
    // weighted form: exact endpoints, and the midpoint of a symmetric
    // interval is exactly 0
    points_.push_back(k == segments ? hi : (lo * (segments - k) + hi * k) / segments);
  }
  for (int k = 0; k < segments; ++k) slopes_.push_back(points_[k] + points_[k + 1]);
}

double PwlApprox::value(double x) const {
  if (x <= lo_) return lo_ * lo_ + (lo_ + points_[1]) * (x - lo_);
  auto it = std::upper_bound(points_.begin(), points_.end(), x);
  size_t k = std::min<size_t>(static_cast<size_t>(it - points_.begin()) - 1, segments_ - 1);
  const double a = points_[k], b = points_[k + 1];
  return a * a + (a + b) * (x - a);
}

double PwlApprox::error_bound() const {
  const double h = (hi_ - lo_) / segments_;
  return h * h / 4.0;
}

std::vector<PwlApprox::Line> PwlApprox::tangents() const {
  std::vector<Line> out;
  for (double p : points_) out.push_back({2.0 * p, -p * p});
  return out;
}

PwlApprox::Line PwlApprox::secant() const { return {lo_ + hi_, -lo_ * hi_}; }

}  // namespace flexsched::flow
