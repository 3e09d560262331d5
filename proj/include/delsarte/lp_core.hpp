#pragma once

// Dense bounded-variable revised simplex.

#include <limits>
#include <string>
#include <vector>

namespace delsarte::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { minimize, maximize };
enum class Relation { less_equal, equal, greater_equal };
enum class Status { optimal, infeasible, unbounded, iteration_limit };

std::string to_string(Status status);

struct Row {
  std::vector<double> coeffs;  // one entry per variable
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
};

struct LinearProgram {
  Sense sense = Sense::minimize;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;

  /// Returns the new variable's index. Existing rows get a zero coefficient.
  int add_variable(double cost, double lo = 0.0, double hi = kInf);
  void add_row(std::vector<double> coeffs, Relation relation, double rhs);

  std::size_t num_variables() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  /// Throws DomainError on inconsistent sizes, non-finite entries or
  /// crossed bounds.
  void validate() const;
};

struct LPSolution {
  Status status = Status::iteration_limit;
  std::vector<double> x;
  double objective = 0.0;
  /// Sensitivity of the optimal objective to each row's right-hand side, in
  /// the user's sense (for a maximization, <= rows carry nonnegative duals).
  std::vector<double> duals;
  /// Objective reconstructed from the final basis: duals . rhs plus the
  /// reduced-cost contribution of nonbasic variables held at bounds.
  double dual_objective = 0.0;
  std::vector<double> row_activity;
  /// Per-row constraint excess, zero when satisfied.
  std::vector<double> residuals;
  double max_residual = 0.0;
  int iterations = 0;
};

struct SolverOptions {
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  int max_iter = 200000;
  int refactor_interval = 64;
  double max_condition = 1e14;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 50;
  /// Relative size of the right-hand-side perturbation used while pivoting;
  /// 0 disables it. Removed (with dual simplex cleanup) before returning.
  double perturbation = 1e-9;
  /// Geometric row/column scaling (powers of two) before pivoting.
  bool scale = true;
  /// Column scaling changes what opt_tol means for each reduced cost; off
  /// when callers rely on unscaled dual feasibility.
  bool scale_columns = true;
};

/// Deterministic: pivot ties break toward the lowest index. Throws
/// NumericalError if a basis is singular or its condition estimate exceeds
/// options.max_condition.
LPSolution solve(const LinearProgram& lp, const SolverOptions& options = {});

}  // namespace delsarte::lp
