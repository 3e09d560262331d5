#pragma once

namespace delsarte::special {

/// log Gamma(x) for x > 0, reentrant.
double log_gamma(double x);

/// log of the rising factorial (x)_s = x (x+1) ... (x+s-1), x > 0.
double log_rising(double x, int s);

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
/// Continued fraction with modified Lentz iteration.
double incomplete_beta(double a, double b, double x);

}  // namespace delsarte::special
