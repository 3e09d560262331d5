#pragma once

#include <cmath>
#include <limits>

namespace delsarte {

/// A real number stored as a sign and the natural log of its magnitude.
///
/// Products and quotients are exact on the log scale. Sums factor out the
/// larger magnitude and use log1p, so a same-sign addition carries at most a
/// few ulps of the log (relative error below 1e-13 for |log| < 1e3).
/// Opposite-sign additions lose accuracy in proportion to the cancellation,
/// like any floating point subtraction.
class LogReal {
 public:
  constexpr LogReal() = default;

  explicit LogReal(double value)
      : sign_(value > 0 ? 1 : (value < 0 ? -1 : 0)),
        log_abs_(value == 0 ? -std::numeric_limits<double>::infinity()
                            : std::log(std::fabs(value))) {}

  static LogReal from_log(double log_abs, int sign = 1) {
    LogReal r;
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) {
      return r;
    }
    r.sign_ = sign > 0 ? 1 : -1;
    r.log_abs_ = log_abs;
    return r;
  }

  int sign() const { return sign_; }
  double log_abs() const { return log_abs_; }
  double log10_abs() const { return log_abs_ / std::log(10.0); }
  bool is_zero() const { return sign_ == 0; }

  /// May overflow to +-inf or underflow to 0.
  double to_double() const {
    return sign_ == 0 ? 0.0 : sign_ * std::exp(log_abs_);
  }

  LogReal operator-() const { return from_log(log_abs_, -sign_); }

  friend LogReal operator*(const LogReal& a, const LogReal& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return {};
    return from_log(a.log_abs_ + b.log_abs_, a.sign_ * b.sign_);
  }

  friend LogReal operator/(const LogReal& a, const LogReal& b) {
    if (a.sign_ == 0) return {};
    if (b.sign_ == 0) {
      return from_log(std::numeric_limits<double>::infinity(), a.sign_);
    }
    return from_log(a.log_abs_ - b.log_abs_, a.sign_ * b.sign_);
  }

  friend LogReal operator+(const LogReal& a, const LogReal& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    const bool a_larger = a.log_abs_ >= b.log_abs_;
    const LogReal& big = a_larger ? a : b;
    const LogReal& small = a_larger ? b : a;
    const double ratio = std::exp(small.log_abs_ - big.log_abs_);
    if (big.sign_ == small.sign_) {
      return from_log(big.log_abs_ + std::log1p(ratio), big.sign_);
    }
    if (ratio == 1.0) return {};
    return from_log(big.log_abs_ + std::log1p(-ratio), big.sign_);
  }

  friend LogReal operator-(const LogReal& a, const LogReal& b) { return a + (-b); }

  /// Real power of a positive value.
  LogReal pow(double exponent) const {
    if (sign_ == 0) return {};
    return from_log(log_abs_ * exponent, 1);
  }

  LogReal sqrt() const { return from_log(0.5 * log_abs_, sign_ == 0 ? 0 : 1); }

 private:
  int sign_ = 0;
  double log_abs_ = -std::numeric_limits<double>::infinity();
};

}  // namespace delsarte
