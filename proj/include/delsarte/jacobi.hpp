#pragma once

// Symmetric Jacobi (ultraspherical) polynomials P_s = P_s^{alpha,alpha}.
//
// Normalization: P_s(1) = (alpha+1)_s, the rising factorial. For the sphere
// family alpha = (n-3)/2 this is ((n-1)/2)_s. The squared norm reported by
// norm_sq() is the one consistent with that normalization. Every quantity the
// bound expressions consume (P_s(1)/|P_s|, P_s(t)/P_s(1), P_s(1)P_s(t)/|P_s|^2)
// is invariant under rescaling P_s, so the choice only affects raw values.

#include <optional>
#include <span>
#include <vector>

#include "delsarte/log_real.hpp"

namespace delsarte {

inline constexpr int kDefaultDegreeCap = 8192;

/// The symmetric Jacobi family for one parameter alpha = beta > -1.
class PolyFamily {
 public:
  /// Sphere family for dimension n >= 3: alpha = (n-3)/2.
  static PolyFamily sphere(int n, int degree_cap = kDefaultDegreeCap);
  /// Arbitrary parameter alpha > -1.
  static PolyFamily raw(double alpha, int degree_cap = kDefaultDegreeCap);
  /// Family proportional to the Gegenbauer C^{(lambda)}: alpha = lambda - 1/2.
  static PolyFamily gegenbauer(double lambda, int degree_cap = kDefaultDegreeCap);

  double alpha() const { return alpha_; }
  bool dimension_indexed() const { return dimension_.has_value(); }
  /// Throws DomainError for raw-parameter families.
  int dimension() const;
  int degree_cap() const { return degree_cap_; }
  PolyFamily with_degree_cap(int cap) const;

  /// Monic recurrence coefficient gamma_s (s >= 1): p_{s+1} = t p_s - gamma_s p_{s-1}.
  double monic_gamma(int s) const;

  /// Throws DegreeLimitError if s is negative or above the cap.
  void check_degree(int s) const;

  friend bool operator==(const PolyFamily&, const PolyFamily&) = default;

 private:
  PolyFamily(double alpha, std::optional<int> dimension, int cap);

  double alpha_;
  std::optional<int> dimension_;
  int degree_cap_;
};

struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, symmetric about 0
  std::vector<double> weights;  // positive, sum to the total weight mass
  int order = 0;

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// w(t) = (1 - t^2)^{(n-3)/2}.
double weight(int n, double t);
/// (1 - t^2)^alpha for the family's alpha.
double weight(const PolyFamily& family, double t);

/// P_s(t) in double precision. Overflows for large s; use eval_p_log there.
double eval_p(const PolyFamily& family, int s, double t);
LogReal eval_p_log(const PolyFamily& family, int s, double t);

/// P_s(t) / P_s(1). Bounded by 1 in magnitude on [-1,1] for alpha >= -1/2.
double eval_normalized(const PolyFamily& family, int s, double t);

/// Fills out[s] = P_s(t)/P_s(1) for s = 0 .. out.size()-1.
void eval_normalized_upto(const PolyFamily& family, double t, std::span<double> out);

/// P_s(1) = (alpha+1)_s.
LogReal value_at_one(const PolyFamily& family, int s);

/// Squared weighted L2 norm of P_s over [-1,1].
LogReal norm_sq(const PolyFamily& family, int s);

/// Integral of the weight over [-1,1].
LogReal total_mass(const PolyFamily& family);

/// Largest zero of P_s (s >= 1); Sturm bisection on the Jacobi matrix.
double max_root(const PolyFamily& family, int s);

/// All zeros of P_s in increasing order.
std::vector<double> roots(const PolyFamily& family, int s);

/// q-point Gauss rule for the family's weight.
QuadratureRule gauss_rule(const PolyFamily& family, int q);

/// Integral of w over [a, b] for the sphere family of dimension n.
double weight_integral(int n, double a, double b);
double weight_integral(const PolyFamily& family, double a, double b);

/// Precomputed recurrence for evaluating P_0/P_0(1) .. P_m/P_m(1) at many
/// points, used by the linear programs and scans.
class NormalizedBasis {
 public:
  NormalizedBasis(const PolyFamily& family, int max_degree);

  int max_degree() const { return static_cast<int>(mult_.size()); }
  const PolyFamily& family() const { return family_; }

  /// out must have size max_degree()+1.
  void eval(double t, std::span<double> out) const;

  /// sum_s coeffs[s] P_s(t)/P_s(1); coeffs.size() <= max_degree()+1.
  double sum(std::span<const double> coeffs, double t) const;

 private:
  PolyFamily family_;
  std::vector<double> mult_;  // (2s+2a+1)/(s+2a+1)
  std::vector<double> back_;  // s/(s+2a+1)
};

}  // namespace delsarte
