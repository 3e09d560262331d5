#include "delsarte/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "delsarte/errors.hpp"
#include "delsarte/jacobi.hpp"

namespace delsarte {

namespace {

constexpr double kRootTolerance = 1e-12;

void require_angle(double theta, double upper, const char* what) {
  if (!(theta > 0.0 && theta <= upper)) {
    throw DomainError(std::string(what) + ": theta out of range");
  }
}

// log(P_s(1)/|P_s|) for the sphere family.
double log_peak_ratio(const PolyFamily& family, int s) {
  return value_at_one(family, s).log_abs() - 0.5 * norm_sq(family, s).log_abs();
}

// x log2 x with 0 log 0 = 0.
double xlog2x(double x) { return x == 0.0 ? 0.0 : x * std::log2(x); }

}  // namespace

Prop1Result prop1_expression(int n, double theta) {
  if (n < 7) throw DomainError("prop1_expression: n must be at least 7");
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw DomainError("prop1_expression: theta must lie in (0, pi)");
  }
  const PolyFamily family = PolyFamily::sphere(n);
  Prop1Result out;
  out.delta = std::cos(theta);
  out.threshold = out.delta - 2.0 / std::sqrt(static_cast<double>(n));
  if (out.threshold < 0.0) throw DomainError("prop1_expression: no admissible r");

  // Largest zeros increase with the degree: bracket by doubling, then bisect.
  // Zeros landing on the threshold up to rounding count as admissible.
  const double limit = out.threshold + kRootTolerance;
  int good = 1;
  int bad = 2;
  while (max_root(family, bad) <= limit) {
    good = bad;
    if (bad >= family.degree_cap()) {
      throw DegreeLimitError("prop1_expression: threshold degree exceeds the degree cap");
    }
    bad = std::min(2 * bad, family.degree_cap());
  }
  while (bad - good > 1) {
    const int mid = good + (bad - good) / 2;
    if (max_root(family, mid) <= limit) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  out.r = good;
  out.x_r = max_root(family, good);

  const double log_front = -std::log(out.r * std::sqrt(static_cast<double>(n)));
  const double log_inv = -std::log1p(-out.delta * out.delta);
  const double peak = log_peak_ratio(family, out.r);
  out.log_expression = LogReal::from_log(log_front + 0.25 * (n - 4) * log_inv + peak);
  out.log_expression_alt = LogReal::from_log(log_front + 0.25 * (n - 2) * log_inv + peak);
  return out;
}

Prop2Result prop2_expression(int n, int k) {
  if (n < 6) throw DomainError("prop2_expression: n must be at least 6");
  if (k < 1) throw DomainError("prop2_expression: k must be at least 1");
  Prop2Result out;
  out.ell = k % 2 == 0 ? k : k + 1;
  out.rho = max_root(PolyFamily::raw(0.5 * (n - 5)), out.ell);
  const double log_inv = -std::log1p(-out.rho * out.rho);
  out.log_expression = LogReal::from_log(std::log(static_cast<double>(k)) +
                                         0.25 * (n - 2) * log_inv +
                                         log_peak_ratio(PolyFamily::sphere(n), out.ell));
  return out;
}

double kl_exponent(double theta) {
  require_angle(theta, std::numbers::pi / 2, "kl_exponent");
  const double s = std::sin(theta);
  const double plus = (1.0 + s) / (2.0 * s);
  const double minus = (1.0 - s) / (2.0 * s);
  return xlog2x(plus) - xlog2x(minus);
}

double volume_exponent(double theta) {
  require_angle(theta, std::numbers::pi / 2, "volume_exponent");
  return -std::log2(std::sin(theta));
}

double cor13_exponent(double theta) {
  return 0.5 * (volume_exponent(theta) + kl_exponent(theta));
}

double yudin_gamma(int n, int k) {
  if (n < 3) throw DomainError("yudin_gamma: n must be at least 3");
  if (k < 2) throw DomainError("yudin_gamma: undefined for degree 0 (k must be at least 2)");
  return max_root(PolyFamily::raw(0.5 * (n - 1)), k - 1);
}

double yudin_value(int n, int k) {
  const double gamma = yudin_gamma(n, k);
  return total_mass(PolyFamily::sphere(n)).to_double() / weight_integral(n, gamma, 1.0);
}

LogReal yudin_asymptotic(int n, int k, double c) {
  if (n < 3) throw DomainError("yudin_asymptotic: n must be at least 3");
  if (k < 1) throw DomainError("yudin_asymptotic: k must be at least 1");
  const double log_value = -c * std::cbrt(4.0 * n) * std::numbers::ln2 +
                           n * std::log(2.0 / n) + (n - 1) * std::log(static_cast<double>(k));
  return LogReal::from_log(log_value);
}

LogReal cor14_value(int n, int k) {
  if (n < 6) throw DomainError("cor14_value: n must be at least 6");
  if (k < 1) throw DomainError("cor14_value: k must be at least 1");
  const double log_value = -0.5 * std::log(static_cast<double>(n)) +
                           (n - 3) * (0.5 * std::log(2.0 * std::numbers::e) - std::log(n)) +
                           (n - 1) * std::log(static_cast<double>(k));
  return LogReal::from_log(log_value);
}

long long dgs_design_exponent(int n) {
  if (n < 2) throw DomainError("dgs_design_exponent: n must be at least 2");
  return static_cast<long long>(n) * (n - 1) / 2;
}

BoundReport code_formulas(int n, double theta) {
  BoundReport report;
  report.n = n;
  report.theta = theta;
  try {
    report.entries.push_back({"volume_exponent", volume_exponent(theta), "2"});
    report.entries.push_back({"kl_exponent", kl_exponent(theta), "2"});
    report.entries.push_back({"cor13_exponent", cor13_exponent(theta), "2"});
  } catch (const std::exception& e) {
    report.skipped.emplace_back("exponents", e.what());
  }
  try {
    const Prop1Result p = prop1_expression(n, theta);
    report.entries.push_back({"prop1_r", static_cast<long long>(p.r), ""});
    report.entries.push_back({"prop1_x_r", p.x_r, ""});
    report.entries.push_back({"prop1_delta", p.delta, ""});
    report.entries.push_back({"prop1_threshold", p.threshold, ""});
    report.entries.push_back({"prop1_expression", p.log_expression, "e"});
    report.entries.push_back({"prop1_expression_alt", p.log_expression_alt, "e"});
  } catch (const std::exception& e) {
    report.skipped.emplace_back("prop1_expression", e.what());
  }
  return report;
}

BoundReport design_formulas(int n, int k) {
  BoundReport report;
  report.n = n;
  report.k = k;
  try {
    const Prop2Result p = prop2_expression(n, k);
    report.entries.push_back({"prop2_ell", static_cast<long long>(p.ell), ""});
    report.entries.push_back({"prop2_rho", p.rho, ""});
    report.entries.push_back({"prop2_expression", p.log_expression, "e"});
  } catch (const std::exception& e) {
    report.skipped.emplace_back("prop2_expression", e.what());
  }
  try {
    report.entries.push_back({"yudin_gamma", yudin_gamma(n, k), ""});
    report.entries.push_back({"yudin_value", yudin_value(n, k), ""});
  } catch (const std::exception& e) {
    report.skipped.emplace_back("yudin_value", e.what());
  }
  try {
    report.entries.push_back({"yudin_asymptotic", yudin_asymptotic(n, k), "e"});
  } catch (const std::exception& e) {
    report.skipped.emplace_back("yudin_asymptotic", e.what());
  }
  try {
    report.entries.push_back({"cor14_value", cor14_value(n, k), "e"});
  } catch (const std::exception& e) {
    report.skipped.emplace_back("cor14_value", e.what());
  }
  try {
    report.entries.push_back({"dgs_design_exponent", dgs_design_exponent(n), ""});
  } catch (const std::exception& e) {
    report.skipped.emplace_back("dgs_design_exponent", e.what());
  }
  return report;
}

}  // namespace delsarte
