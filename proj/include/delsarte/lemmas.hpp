#pragma once

// Numerical verification of the Jacobi-polynomial lemmas behind the LP
// bounds, and desk-scale sandwich checks of the LP values against the
// closed-form expressions. Every check is deterministic: fixed grids, no
// randomness.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "delsarte/delsarte_lp.hpp"

namespace delsarte {

struct ParamRange {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
};

using ParamPoint = std::vector<std::pair<std::string, double>>;

/// One check record. Summary records cover a whole sweep; case records cover
/// a single parameter point (their ranges are degenerate).
struct CheckReport {
  std::string id;
  bool summary = true;
  /// False for findings: the outcome is recorded but never fails a run.
  bool asserted = true;
  std::vector<ParamRange> ranges;
  bool holds = true;
  /// Parameters at which the margin is smallest; margin >= 0 means the
  /// property holds there (up to the check's tolerance).
  ParamPoint worst_case;
  double worst_margin = 0.0;
  std::optional<double> constant;
  std::string constant_name;
  /// Extra named numbers (slopes, brackets, secondary margins).
  ParamPoint metrics;
  std::vector<std::string> findings;
  int cases = 0;
  int skipped = 0;
};

/// Collected output of one check run: case records first, then summaries.
struct CheckRun {
  std::vector<CheckReport> records;

  /// True when every asserted summary holds.
  bool passed() const;
  const CheckReport* find(const std::string& id, bool summary = true) const;
};

struct IntRange {
  int lo = 0;
  int hi = 0;
  int step = 1;
};

/// w P_s^2 and w P_s decrease on [x_s + 2/sqrt(n), 1] (x_0 := 0). Each pair
/// (n, s) is sampled on `grid` uniform points; consecutive values may rise by
/// at most 1e-12 of the local magnitude. Empty intervals are skipped.
CheckRun check_monotone_lemmas(IntRange n, IntRange s, int grid = 10000,
                               bool emit_cases = true);

struct TailSumOptions {
  IntRange n{7, 16};
  IntRange r{1, 100};
  int truncation = 5000;       // S
  int ratio_max_degree = 5000;  // decreasing-ratio check runs for s <= this
};

/// a_s = |P_s|/P_s(1): C(n, r) = sum_{s=r}^{S} a_s / (r a_r), bracketed
/// above by a rigorous bound on the tail beyond S; a_s is checked to be
/// strictly decreasing and to satisfy the closed-form step ratio.
CheckRun check_tail_sum(const TailSumOptions& options = {}, bool emit_cases = true);

struct NemOptions {
  IntRange n{6, 16};
  std::vector<int> degrees{0, 1, 2, 4, 8, 16, 32, 64, 128, 256};
  int scan_points = 100000;
  int refine = 20;
  /// Doubling s may change the constant by at most this factor, for s >= 8.
  double stability = 0.2;
};

/// sup_x |P_s(x)| (1-x^2)^{(n-2)/4} / (sqrt(n) |P_s|) per (n, s).
CheckRun check_nem_constant(const NemOptions& options = {}, bool emit_cases = true);

struct DesignMonotoneOptions {
  IntRange n{6, 24};
  IntRange s{0, 40, 2};
  std::vector<double> t_grid;  // empty: 0.05, 0.10, ..., 0.95, 0.99
  int identity_points = 41;    // t grid on [-1, 1] for the identity
  int markov_pairs = 50;
};

/// b_s = P_s(1) P_s(t)/|P_s|^2 increases over even s whenever the largest
/// zero of the alpha=(n-5)/2 polynomial of degree s+2 is <= t; the Gegenbauer
/// step identity lambda (C^{lambda+1}_{s+2} - C^{lambda+1}_s) =
/// (s + 2 + lambda) C^lambda_{s+2}; and strict decrease of the largest
/// Gegenbauer zero in lambda.
CheckRun check_design_monotone(const DesignMonotoneOptions& options = {},
                               bool emit_cases = true);

/// |x_s - sqrt(4s(s+n))/(2s+n)| <= sqrt(2/n) (recorded as findings) and
/// 1 - x_s^2 >= (n-4)^2/(2s+n-4)^2 (asserted).
CheckRun check_root_estimates(IntRange n = {6, 32}, IntRange s = {2, 100},
                              bool emit_cases = true);

struct SandwichCodeOptions {
  IntRange n{7, 12};
  std::vector<double> theta_degrees{50, 60, 70, 80};
  SolveOptions solve;
};

/// Relaxed code LP >= c_low * prop1_expression with one positive c_low;
/// (1/n) log2(certified) - kl_exponent positive and decreasing in n.
CheckRun sandwich_codes(const SandwichCodeOptions& options = {}, bool emit_cases = true);

struct SandwichDesignOptions {
  std::vector<int> n{6, 7, 8};
  std::vector<int> k{4, 8, 16, 32};
  Convention convention = Convention::strict;
  double slope_tolerance = 0.3;
  SolveOptions solve;
};

/// Certified design LP >= 0.99 yudin_value, <= C_emp * prop2_expression,
/// and the log-log slope in k within (n-1) +- slope_tolerance.
CheckRun sandwich_designs(const SandwichDesignOptions& options = {}, bool emit_cases = true);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace delsarte
