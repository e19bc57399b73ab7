#pragma once

#include <vector>

namespace flexsched::flow {

// Piecewise-linear model of x -> x^2 on [lo, hi] with K equal segments.
//
// value() is the chord interpolant through the K + 1 breakpoints; it is exact
// at breakpoints and overestimates by at most h^2 / 4, h = (hi - lo) / K.
// tangents() are the supporting lines at the breakpoints; their maximum is a
// convex under-estimate. The flow block uses the tangents from below and the
// single secant over [lo, hi] from above, which keeps the model convex.
class PwlApprox {
 public:
  struct Line {
    double slope;
    double intercept;
    double operator()(double x) const { return slope * x + intercept; }
  };

  PwlApprox(double lo, double hi, int segments);

  double lower() const { return lo_; }
  double upper() const { return hi_; }
  int segments() const { return segments_; }
  const std::vector<double>& breakpoints() const { return points_; }
  // chord slope of each segment, strictly increasing when lo < hi
  const std::vector<double>& slopes() const { return slopes_; }

  double value(double x) const;
  double error_bound() const;
  std::vector<Line> tangents() const;
  Line secant() const;

 private:
  double lo_, hi_;
  int segments_;
  std::vector<double> points_;
  std::vector<double> slopes_;
};

}  // namespace flexsched::flow
