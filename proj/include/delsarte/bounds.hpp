#pragma once

// Closed-form bound expressions for spherical codes and designs. Expressions
// carrying unspecified Omega/O constants are returned constant-free; values
// that overflow double are returned as LogReal (natural log inside).

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "delsarte/log_real.hpp"

namespace delsarte {

/// Lower-bound expression for the code LP.
struct Prop1Result {
  int r = 0;           // largest s with x_s <= threshold
  double x_r = 0.0;    // largest zero of P_r
  double delta = 0.0;  // cos theta
  double threshold = 0.0;  // delta - 2/sqrt(n)
  /// (1/(r sqrt n)) (1/(1-delta^2))^{(n-4)/4} P_r(1)/|P_r|.
  LogReal log_expression;
  /// Same with the exponent (n-2)/4.
  LogReal log_expression_alt;
};

/// Upper-bound expression for the design LP.
struct Prop2Result {
  int ell = 0;       // k rounded up to even
  double rho = 0.0;  // largest zero of the alpha=(n-5)/2 polynomial of degree ell
  /// k (1/(1-rho^2))^{(n-2)/4} P_ell(1)/|P_ell|.
  LogReal log_expression;
};

/// Requires n >= 7 and 0 < theta < pi. Throws DomainError("no admissible r")
/// when cos(theta) - 2/sqrt(n) < 0.
Prop1Result prop1_expression(int n, double theta);

/// Requires n >= 6, k >= 1.
Prop2Result prop2_expression(int n, int k);

/// Per-dimension exponents, base 2, for theta in (0, pi/2].
double kl_exponent(double theta);
double volume_exponent(double theta);
/// Mean of the volume and KL exponents.
double cor13_exponent(double theta);

/// Largest zero of the alpha=(n-1)/2 polynomial of degree k-1 (k >= 2).
double yudin_gamma(int n, int k);
/// Integral of w over [-1,1] divided by its integral over [gamma, 1].
/// Throws DomainError for k = 1 (degree-0 polynomial has no zeros).
double yudin_value(int n, int k);

inline constexpr double kYudinC = 1.86;
/// 2^{-c (4n)^{1/3}} (2/n)^n k^{n-1}, n >= 3, k >= 1.
LogReal yudin_asymptotic(int n, int k, double c = kYudinC);
/// n^{-1/2} (sqrt(2e)/n)^{n-3} k^{n-1}, n >= 6, k >= 1.
LogReal cor14_value(int n, int k);
/// Exponent n(n-1)/2 of the existential design bound k^{n(n-1)/2}, n >= 2.
long long dgs_design_exponent(int n);

/// One named value of a bound report. `base` is "2" for per-dimension
/// exponents, "e" for LogReal magnitudes and empty for plain values.
struct BoundEntry {
  std::string name;
  std::variant<double, long long, LogReal> value;
  std::string base;
};

/// Every closed-form expression for one (n, theta) or (n, k). Expressions
/// that are undefined at the point are listed in `skipped` with the reason.
struct BoundReport {
  int n = 0;
  std::optional<double> theta;
  std::optional<int> k;
  std::vector<BoundEntry> entries;
  std::vector<std::pair<std::string, std::string>> skipped;
};

BoundReport code_formulas(int n, double theta);
BoundReport design_formulas(int n, int k);

}  // namespace delsarte
