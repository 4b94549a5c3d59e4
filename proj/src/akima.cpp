#include "eqladder/akima.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eqladder/error.hpp"

namespace eqladder {

AkimaSpline::AkimaSpline(std::span<const double> xs, std::span<const double> ys)
    : xs_(xs.begin(), xs.end()), ys_(ys.begin(), ys.end()) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorKind::InvalidConfig, "akima: xs and ys differ in length");
  }
  const std::size_t n = xs_.size();
  if (n < kAkimaMinKnots) {
    throw Error(ErrorKind::TooFewKnots,
                "akima: need at least 5 knots, got " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
      throw Error(ErrorKind::NonIncreasingX, "akima: non-finite knot at index " + std::to_string(i));
    }
    if (i > 0 && !(xs_[i] > xs_[i - 1])) {
      throw Error(ErrorKind::NonIncreasingX,
                  "akima: xs not strictly increasing at index " + std::to_string(i));
    }
  }

  // Secants with two virtual entries on each side: m[j + 2] is the slope of
  // interval j.
  std::vector<double> m(n + 3);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    m[j + 2] = (ys_[j + 1] - ys_[j]) / (xs_[j + 1] - xs_[j]);
  }
  m[1] = 2.0 * m[2] - m[3];
  m[0] = 2.0 * m[1] - m[2];
  m[n + 1] = 2.0 * m[n] - m[n - 1];
  m[n + 2] = 2.0 * m[n + 1] - m[n];

  std::vector<double> w_right(n), w_left(n);
  double max_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w_right[i] = std::abs(m[i + 3] - m[i + 2]);
    w_left[i] = std::abs(m[i + 1] - m[i]);
    max_sum = std::max(max_sum, w_right[i] + w_left[i]);
  }

  slopes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sum = w_right[i] + w_left[i];
    if (sum > 1e-9 * max_sum) {
      slopes_[i] = (w_right[i] * m[i + 1] + w_left[i] * m[i + 2]) / sum;
    } else {
      slopes_[i] = 0.5 * (m[i + 1] + m[i + 2]);
    }
  }
}

std::size_t AkimaSpline::interval_of(double x) const {
  if (!(x >= xs_.front() && x <= xs_.back())) {
    throw Error(ErrorKind::OutOfRange, "akima: x=" + std::to_string(x) + " outside [" +
                                           std::to_string(xs_.front()) + ", " +
                                           std::to_string(xs_.back()) + "]");
  }
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const auto i = static_cast<std::size_t>(it - xs_.begin());
  return std::min(i == 0 ? 0 : i - 1, xs_.size() - 2);
}

double AkimaSpline::operator()(double x) const {
  const std::size_t i = interval_of(x);
  if (x == xs_[i]) return ys_[i];
  if (x == xs_[i + 1]) return ys_[i + 1];
  const double h = xs_[i + 1] - xs_[i];
  const double secant = (ys_[i + 1] - ys_[i]) / h;
  const double c2 = (3.0 * secant - 2.0 * slopes_[i] - slopes_[i + 1]) / h;
  const double c3 = (slopes_[i] + slopes_[i + 1] - 2.0 * secant) / (h * h);
  const double t = x - xs_[i];
  return ys_[i] + t * (slopes_[i] + t * (c2 + t * c3));
}

double AkimaSpline::derivative(double x) const {
  const std::size_t i = interval_of(x);
  const double h = xs_[i + 1] - xs_[i];
  const double secant = (ys_[i + 1] - ys_[i]) / h;
  const double c2 = (3.0 * secant - 2.0 * slopes_[i] - slopes_[i + 1]) / h;
  const double c3 = (slopes_[i] + slopes_[i + 1] - 2.0 * secant) / (h * h);
  const double t = x - xs_[i];
  return slopes_[i] + t * (2.0 * c2 + 3.0 * t * c3);
}

}  // namespace eqladder
