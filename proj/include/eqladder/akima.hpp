#pragma once

#include <span>
#include <vector>

namespace eqladder {

// Akima (1970) piecewise-cubic interpolant. Knot slopes use the weighted
// average of neighbouring secant slopes; two virtual secants per end are
// obtained by linear extrapolation of the secant sequence. Where both
// weights vanish (relative to the largest weight sum) the knot slope is the
// mean of the two adjacent secants.
class AkimaSpline {
 public:
  // Throws TooFewKnots (< 5 knots) or NonIncreasingX.
  AkimaSpline(std::span<const double> xs, std::span<const double> ys);

  // Throws OutOfRange outside [x_min, x_max]; no extrapolation.
  double operator()(double x) const;
  double derivative(double x) const;

  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }
  const std::vector<double>& knots() const { return xs_; }
  const std::vector<double>& values() const { return ys_; }
  const std::vector<double>& knot_slopes() const { return slopes_; }

 private:
  std::size_t interval_of(double x) const;

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> slopes_;
};

inline constexpr std::size_t kAkimaMinKnots = 5;

}  // namespace eqladder
