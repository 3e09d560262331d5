#include "delsarte/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "delsarte/errors.hpp"
#include "delsarte/special.hpp"

namespace delsarte {

using special::log_gamma;

PolyFamily::PolyFamily(double alpha, std::optional<int> dimension, int cap)
    : alpha_(alpha), dimension_(dimension), degree_cap_(cap) {
  if (!(alpha > -1.0)) {
    throw DomainError("Jacobi parameter alpha must exceed -1, got " + std::to_string(alpha));
  }
  if (cap < 1) throw DomainError("degree cap must be positive");
}

PolyFamily PolyFamily::sphere(int n, int degree_cap) {
  if (n < 3) throw DomainError("sphere dimension must be >= 3, got " + std::to_string(n));
  return PolyFamily(0.5 * (n - 3), n, degree_cap);
}

PolyFamily PolyFamily::raw(double alpha, int degree_cap) {
  return PolyFamily(alpha, std::nullopt, degree_cap);
}

PolyFamily PolyFamily::gegenbauer(double lambda, int degree_cap) {
  return PolyFamily(lambda - 0.5, std::nullopt, degree_cap);
}

int PolyFamily::dimension() const {
  if (!dimension_) throw DomainError("family is not dimension-indexed");
  return *dimension_;
}

PolyFamily PolyFamily::with_degree_cap(int cap) const {
  return PolyFamily(alpha_, dimension_, cap);
}

double PolyFamily::monic_gamma(int s) const {
  const double a2 = 2.0 * alpha_;
  if (s == 1) return 1.0 / (a2 + 3.0);
  return s * (s + a2) / ((2.0 * s + a2 + 1.0) * (2.0 * s + a2 - 1.0));
}

void PolyFamily::check_degree(int s) const {
  if (s < 0) throw DomainError("negative degree");
  if (s > degree_cap_) {
    throw DegreeLimitError("degree limit: " + std::to_string(s) + " exceeds cap " +
                           std::to_string(degree_cap_));
  }
}

namespace {

void check_unit_interval(double t) {
  if (!(t >= -1.0 && t <= 1.0)) {
    throw DomainError("argument outside [-1,1]: " + std::to_string(t));
  }
}

// Number of eigenvalues of the s x s Jacobi matrix (zero diagonal,
// off-diagonal sqrt(gamma_i)) strictly below x.
int sturm_count(std::span<const double> gamma, int s, double x) {
  int count = 0;
  double d = -x;
  if (d < 0) ++count;
  for (int i = 1; i < s; ++i) {
    if (d == 0.0) d = 1e-300;
    d = -x - gamma[i] / d;
    if (d < 0) ++count;
  }
  return count;
}

std::vector<double> gamma_table(const PolyFamily& family, int s) {
  std::vector<double> gamma(s, 0.0);
  for (int i = 1; i < s; ++i) gamma[i] = family.monic_gamma(i);
  return gamma;
}

// The (index)-th smallest eigenvalue, 0-based, in [lo, hi].
double bisect_eigenvalue(std::span<const double> gamma, int s, int index, double lo, double hi) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(gamma, s, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double weight(int n, double t) {
  if (n < 3) throw DomainError("dimension must be >= 3");
  return weight(PolyFamily::sphere(n), t);
}

double weight(const PolyFamily& family, double t) {
  check_unit_interval(t);
  const double base = (1.0 - t) * (1.0 + t);
  if (family.alpha() == 0.0) return 1.0;
  if (base == 0.0) return family.alpha() > 0 ? 0.0 : INFINITY;
  return std::pow(base, family.alpha());
}

NormalizedBasis::NormalizedBasis(const PolyFamily& family, int max_degree)
    : family_(family) {
  family.check_degree(max_degree);
  mult_.resize(max_degree);
  back_.resize(max_degree);
  const double a2 = 2.0 * family.alpha();
  for (int s = 0; s < max_degree; ++s) {
    if (s == 0) {
      mult_[s] = 1.0;
      back_[s] = 0.0;
    } else {
      mult_[s] = (2.0 * s + a2 + 1.0) / (s + a2 + 1.0);
      back_[s] = s / (s + a2 + 1.0);
    }
  }
}

void NormalizedBasis::eval(double t, std::span<double> out) const {
  const std::size_t m = mult_.size();
  out[0] = 1.0;
  if (m == 0) return;
  double prev = 0.0;
  double cur = 1.0;
  for (std::size_t s = 0; s < m; ++s) {
    const double next = mult_[s] * t * cur - back_[s] * prev;
    prev = cur;
    cur = next;
    out[s + 1] = cur;
  }
}

double NormalizedBasis::sum(std::span<const double> coeffs, double t) const {
  if (coeffs.empty()) return 0.0;
  double acc = coeffs[0];
  double prev = 0.0;
  double cur = 1.0;
  for (std::size_t s = 0; s + 1 < coeffs.size(); ++s) {
    const double next = mult_[s] * t * cur - back_[s] * prev;
    prev = cur;
    cur = next;
    acc += coeffs[s + 1] * cur;
  }
  return acc;
}

double eval_normalized(const PolyFamily& family, int s, double t) {
  family.check_degree(s);
  check_unit_interval(t);
  if (s == 0) return 1.0;
  const double a2 = 2.0 * family.alpha();
  double prev = 1.0;
  double cur = t;
  for (int j = 1; j < s; ++j) {
    const double next = ((2.0 * j + a2 + 1.0) * t * cur - j * prev) / (j + a2 + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void eval_normalized_upto(const PolyFamily& family, double t, std::span<double> out) {
  if (out.empty()) return;
  check_unit_interval(t);
  NormalizedBasis(family, static_cast<int>(out.size()) - 1).eval(t, out);
}

LogReal value_at_one(const PolyFamily& family, int s) {
  family.check_degree(s);
  return LogReal::from_log(special::log_rising(family.alpha() + 1.0, s), 1);
}

double eval_p(const PolyFamily& family, int s, double t) {
  return eval_p_log(family, s, t).to_double();
}

LogReal eval_p_log(const PolyFamily& family, int s, double t) {
  return value_at_one(family, s) * LogReal(eval_normalized(family, s, t));
}

LogReal total_mass(const PolyFamily& family) {
  const double a = family.alpha();
  return LogReal::from_log((2.0 * a + 1.0) * std::log(2.0) + 2.0 * log_gamma(a + 1.0) -
                           log_gamma(2.0 * a + 2.0));
}

LogReal norm_sq(const PolyFamily& family, int s) {
  family.check_degree(s);
  if (s == 0) return total_mass(family);
  // Classical squared norm times (s!)^2 for the rising-factorial normalization.
  const double a = family.alpha();
  const double log_value = log_gamma(s + 1.0) + (2.0 * a + 1.0) * std::log(2.0) +
                           2.0 * log_gamma(s + a + 1.0) - std::log(2.0 * s + 2.0 * a + 1.0) -
                           log_gamma(s + 2.0 * a + 1.0);
  return LogReal::from_log(log_value);
}

double max_root(const PolyFamily& family, int s) {
  family.check_degree(s);
  if (s < 1) throw DomainError("max_root needs degree >= 1");
  if (s == 1) return 0.0;
  const auto gamma = gamma_table(family, s);
  return bisect_eigenvalue(gamma, s, s - 1, 0.0, 1.0);
}

std::vector<double> roots(const PolyFamily& family, int s) {
  family.check_degree(s);
  std::vector<double> out(s, 0.0);
  if (s == 0) return out;
  const auto gamma = gamma_table(family, s);
  // Positive half by bisection, mirrored; the middle root is 0 for odd s.
  for (int i = s / 2 + (s % 2); i < s; ++i) {
    out[i] = bisect_eigenvalue(gamma, s, i, 0.0, 1.0);
    out[s - 1 - i] = -out[i];
  }
  if (s % 2 == 1) out[s / 2] = 0.0;
  return out;
}

QuadratureRule gauss_rule(const PolyFamily& family, int q) {
  if (q < 1) throw DomainError("quadrature order must be >= 1");
  family.check_degree(q);
  QuadratureRule rule;
  rule.order = q;
  rule.nodes = roots(family, q);
  rule.weights.resize(q);
  const double mass = total_mass(family).to_double();
  std::vector<double> beta(q + 1, 0.0);
  for (int j = 1; j <= q; ++j) beta[j] = std::sqrt(family.monic_gamma(j));
  // Christoffel numbers 1 / sum_j p_j(x)^2 over the orthonormal family.
  for (int i = 0; i < (q + 1) / 2; ++i) {
    const double x = rule.nodes[q - 1 - i];
    double prev = 0.0;
    double cur = 1.0 / std::sqrt(mass);
    double acc = cur * cur;
    for (int j = 0; j + 1 < q; ++j) {
      const double next = (x * cur - beta[j] * prev) / beta[j + 1];
      prev = cur;
      cur = next;
      acc += cur * cur;
    }
    rule.weights[q - 1 - i] = 1.0 / acc;
    rule.weights[i] = 1.0 / acc;
  }
  return rule;
}

namespace {

const QuadratureRule& legendre20() {
  static const QuadratureRule rule = gauss_rule(PolyFamily::raw(0.0), 20);
  return rule;
}

double fixed_legendre(const PolyFamily& family, double a, double b) {
  const auto& rule = legendre20();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * weight(family, std::clamp(mid + half * rule.nodes[i], -1.0, 1.0));
  }
  return acc * half;
}

double adaptive_legendre(const PolyFamily& family, double a, double b, double whole, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = fixed_legendre(family, a, mid);
  const double right = fixed_legendre(family, mid, b);
  const double refined = left + right;
  if (depth >= 40 || std::fabs(refined - whole) <= 1e-14 * std::fabs(refined)) return refined;
  return adaptive_legendre(family, a, mid, left, depth + 1) +
         adaptive_legendre(family, mid, b, right, depth + 1);
}

// Integral of w over [-1, t] for t <= 0.
double lower_tail(const PolyFamily& family, double mass, double t) {
  const double shape = family.alpha() + 1.0;
  return mass * special::incomplete_beta(shape, shape, 0.5 * (1.0 + t));
}

}  // namespace

double weight_integral(int n, double a, double b) {
  return weight_integral(PolyFamily::sphere(n), a, b);
}

double weight_integral(const PolyFamily& family, double a, double b) {
  check_unit_interval(a);
  check_unit_interval(b);
  if (a > b) throw DomainError("weight_integral: lower limit exceeds upper limit");
  if (a == b) return 0.0;
  const double mass = total_mass(family).to_double();
  double value = 0.0;
  double scale = 0.0;
  if (b <= 0.0) {
    scale = lower_tail(family, mass, b);
    value = scale - lower_tail(family, mass, a);
  } else if (a >= 0.0) {
    scale = lower_tail(family, mass, -a);
    value = scale - lower_tail(family, mass, -b);
  } else {
    scale = mass;
    value = mass - lower_tail(family, mass, a) - lower_tail(family, mass, -b);
  }
  // Heavy cancellation only happens for intervals strictly inside (-1,1),
  // where the integrand is smooth.
  if (value < 1e-3 * scale) {
    return adaptive_legendre(family, a, b, fixed_legendre(family, a, b), 0);
  }
  return value;
}

}  // namespace delsarte
