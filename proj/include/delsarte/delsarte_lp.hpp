#pragma once

// Delsarte linear programs for spherical codes and designs, solved by a
// cutting-plane loop over a finite constraint grid and repaired into
// certified bounds.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "delsarte/jacobi.hpp"
#include "delsarte/log_real.hpp"
#include "delsarte/lp_core.hpp"

namespace delsarte {

/// Which coefficients of a design polynomial must be nonpositive:
/// strict means a_s <= 0 for s >= k, shifted means s >= k+1.
enum class Convention { strict, shifted };

std::string to_string(Convention convention);
/// Throws DomainError on anything but "strict" or "shifted".
Convention parse_convention(std::string_view text);

struct CodeProblem {
  int n = 3;
  double theta = 0.0;  // radians
  int m = 1;

  double delta() const;
  void validate() const;
};

struct DesignProblem {
  int n = 3;
  int k = 1;
  int m = 1;
  Convention convention = Convention::strict;

  /// Smallest degree whose coefficient is sign-constrained.
  int first_constrained_degree() const;
  void validate() const;
};

using Problem = std::variant<CodeProblem, DesignProblem>;

/// F = sum_s c_s P_s / P_s(1). The raw coefficients in the P_s basis are
/// a_s = c_s / P_s(1); they are kept implicit because P_s(1) leaves double
/// range long before the degrees used here become impractical.
class CoeffVector {
 public:
  CoeffVector(PolyFamily family, std::vector<double> normalized);
  static CoeffVector from_raw(PolyFamily family, std::span<const LogReal> coefficients);

  const PolyFamily& family() const { return family_; }
  int degree() const { return static_cast<int>(normalized_.size()) - 1; }
  std::span<const double> normalized() const { return normalized_; }
  LogReal raw_coefficient(int s) const;

  double operator()(double t) const;
  double value_at_one() const;

 private:
  PolyFamily family_;
  std::vector<double> normalized_;
};

/// Simplex settings for the Delsarte LPs: grid feasibility is resolved well
/// below the cutting-plane tolerance, and only rows are rescaled so that the
/// optimality tolerance stays absolute in the coefficient units.
inline lp::SolverOptions delsarte_lp_options() {
  lp::SolverOptions o;
  o.opt_tol = 1e-12;
  o.scale_columns = false;
  return o;
}

struct SolveOptions {
  double cut_tol = 1e-10;
  int max_rounds = 60;
  /// Initial constraint points; 0 selects 4m+1 Chebyshev-Lobatto points.
  int initial_grid = 0;
  /// Cutting-plane scan uses scan_factor*m+1 uniform points.
  int scan_factor = 64;
  int verify_points = 100000;
  int refine_extrema = 50;
  /// Degree sweep: m doubles until the certified value changes by less than
  /// m_rel_change or m would exceed m_max.
  int m_max = 128;
  double m_rel_change = 1e-4;
  bool auto_degree = false;
  int jobs = 1;
  lp::SolverOptions lp = delsarte_lp_options();
};

struct DegreeStep {
  int m = 0;
  double relaxed_value = 0.0;
  double certified_value = 0.0;
};

struct LPBracket {
  double relaxed_value = 0.0;
  double certified_value = 0.0;
  CoeffVector certificate{PolyFamily::sphere(3), {1.0}};
  /// Constraint violation of the relaxed optimum found by the verification
  /// scan; this is what the repair step absorbed.
  double max_violation = 0.0;
  int grid_size = 0;
  int m_used = 0;
  int rounds = 0;
  std::vector<DegreeStep> trace;
};

struct VerifyResult {
  bool feasible = false;
  double max_violation = 0.0;
  double worst_t = 0.0;
};

/// Upper bracket on the code LP: min F(1) with a_0 = 1, a_s >= 0 and
/// F <= 0 on [-1, cos theta].
LPBracket code_bound(const CodeProblem& problem, const SolveOptions& options = {});

/// Lower bracket on the design LP: max 1/a_0 with F(1) = 1, F >= 0 on [-1,1]
/// and the convention's sign constraints.
LPBracket design_bound(const DesignProblem& problem, const SolveOptions& options = {});

/// Doubling degree sweep starting at m = 8 (codes) or m = k (designs).
LPBracket code_bound_auto(int n, double theta, const SolveOptions& options = {});
LPBracket design_bound_auto(int n, int k, Convention convention, const SolveOptions& options = {});

/// Independent feasibility check: dense scan plus golden-section refinement
/// of the worst local extrema, and exact coefficient sign checks.
VerifyResult verify_certificate(const CodeProblem& problem, const CoeffVector& f,
                                const SolveOptions& options = {});
VerifyResult verify_certificate(const DesignProblem& problem, const CoeffVector& f,
                                const SolveOptions& options = {});

struct SweepResult {
  Problem problem;
  std::optional<LPBracket> bracket;
  std::string error;
};

/// Solves every problem independently (up to options.jobs at a time). With
/// options.auto_degree each problem's m is the sweep's maximum degree.
/// Failures are recorded per item; output order matches input order.
std::vector<SweepResult> bound_sweep(std::span<const Problem> problems,
                                     const SolveOptions& options = {});

}  // namespace delsarte
