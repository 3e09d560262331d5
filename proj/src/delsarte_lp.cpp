#include "delsarte/delsarte_lp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "delsarte/errors.hpp"
#include "delsarte/scan.hpp"

namespace delsarte {

std::string to_string(Convention convention) {
  return convention == Convention::strict ? "strict" : "shifted";
}

Convention parse_convention(std::string_view text) {
  if (text == "strict") return Convention::strict;
  if (text == "shifted") return Convention::shifted;
  throw DomainError("unknown convention '" + std::string(text) + "'");
}

double CodeProblem::delta() const { return std::cos(theta); }

void CodeProblem::validate() const {
  if (n < 3) throw DomainError("code problem needs n >= 3");
  if (!(theta > 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("code problem needs theta in (0, pi]");
  }
  if (m < 1) throw DomainError("code problem needs m >= 1");
}

int DesignProblem::first_constrained_degree() const {
  return convention == Convention::strict ? k : k + 1;
}

void DesignProblem::validate() const {
  if (n < 3) throw DomainError("design problem needs n >= 3");
  if (k < 1) throw DomainError("design problem needs k >= 1");
  if (m < k) throw DomainError("design problem needs m >= k");
}

CoeffVector::CoeffVector(PolyFamily family, std::vector<double> normalized)
    : family_(std::move(family)), normalized_(std::move(normalized)) {
  if (normalized_.empty()) throw DomainError("coefficient vector must be non-empty");
  family_.check_degree(degree());
}

CoeffVector CoeffVector::from_raw(PolyFamily family, std::span<const LogReal> coefficients) {
  std::vector<double> c(coefficients.size());
  for (std::size_t s = 0; s < c.size(); ++s) {
    c[s] = (coefficients[s] * delsarte::value_at_one(family, static_cast<int>(s))).to_double();
  }
  return CoeffVector(std::move(family), std::move(c));
}

LogReal CoeffVector::raw_coefficient(int s) const {
  return LogReal(normalized_.at(s)) / delsarte::value_at_one(family_, s);
}

double CoeffVector::operator()(double t) const {
  return NormalizedBasis(family_, degree()).sum(normalized_, t);
}

double CoeffVector::value_at_one() const {
  double acc = 0.0;
  for (double c : normalized_) acc += c;
  return acc;
}

namespace {

std::vector<double> chebyshev_lobatto(double lo, double hi, int count) {
  if (hi <= lo || count <= 1) return {lo};
  std::vector<double> pts(count);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int j = 0; j < count; ++j) {
    pts[j] = mid - half * std::cos(std::numbers::pi * j / (count - 1));
  }
  pts.front() = lo;
  pts.back() = hi;
  return pts;
}

// A cut lying within kMergeDistance of an existing point moves that point
// instead of adding a nearly parallel column to the LP.
constexpr double kMergeDistance = 1e-7;

bool insert_points(std::vector<double>& grid, const std::vector<Extremum>& cuts) {
  bool changed = false;
  for (const auto& c : cuts) {
    auto it = std::lower_bound(grid.begin(), grid.end(), c.t);
    double* nearest = nullptr;
    if (it != grid.end() && *it - c.t < kMergeDistance) nearest = &*it;
    if (it != grid.begin() && c.t - *(it - 1) < kMergeDistance) {
      if (nearest == nullptr || c.t - *(it - 1) < *nearest - c.t) nearest = &*(it - 1);
    }
    if (nearest != nullptr) {
      if (*nearest != c.t) {
        *nearest = c.t;
        changed = true;
      }
    } else {
      grid.insert(it, c.t);
      changed = true;
    }
  }
  std::sort(grid.begin(), grid.end());
  return changed;
}

// The LP is solved in dual form: one column per constraint point and one row
// per degree, so the basis stays (m+1) x (m+1) however many cuts are added.
// Primal coefficients are read off the row duals.
struct RelaxedSolution {
  std::vector<double> coeffs;  // normalized c_s
  double lp_objective = 0.0;
};

RelaxedSolution solve_code_grid(const NormalizedBasis& basis, const std::vector<double>& grid,
                                const lp::SolverOptions& lp_options) {
  const int m = basis.max_degree();
  const int J = static_cast<int>(grid.size());
  lp::LinearProgram prog;
  prog.sense = lp::Sense::maximize;
  prog.objective.assign(J, 1.0);
  prog.lower.assign(J, 0.0);
  prog.upper.assign(J, lp::kInf);
  prog.rows.resize(m);
  for (int s = 1; s <= m; ++s) {
    prog.rows[s - 1].coeffs.resize(J);
    prog.rows[s - 1].relation = lp::Relation::less_equal;
    prog.rows[s - 1].rhs = 1.0;
  }
  std::vector<double> vals(m + 1);
  for (int j = 0; j < J; ++j) {
    basis.eval(grid[j], vals);
    for (int s = 1; s <= m; ++s) prog.rows[s - 1].coeffs[j] = -vals[s];
  }
  const auto sol = lp::solve(prog, lp_options);
  if (sol.status == lp::Status::unbounded) {
    throw BoundError("code LP infeasible at degree " + std::to_string(m));
  }
  if (sol.status != lp::Status::optimal) {
    throw BoundError("code LP solve ended with status " + lp::to_string(sol.status));
  }
  RelaxedSolution out;
  out.coeffs.assign(m + 1, 0.0);
  out.coeffs[0] = 1.0;
  for (int s = 1; s <= m; ++s) out.coeffs[s] = std::max(0.0, sol.duals[s - 1]);
  out.lp_objective = 1.0 + sol.objective;
  return out;
}

RelaxedSolution solve_design_grid(const NormalizedBasis& basis, const std::vector<double>& grid,
                                  int first_constrained, const lp::SolverOptions& lp_options) {
  const int m = basis.max_degree();
  const int J = static_cast<int>(grid.size());
  lp::LinearProgram prog;
  prog.sense = lp::Sense::maximize;
  // Column 0 is the free variable carrying the F(1) = 1 normalization.
  prog.objective.assign(J + 1, 0.0);
  prog.objective[0] = 1.0;
  prog.lower.assign(J + 1, 0.0);
  prog.upper.assign(J + 1, lp::kInf);
  prog.lower[0] = -lp::kInf;
  prog.rows.resize(m + 1);
  for (int s = 0; s <= m; ++s) {
    auto& row = prog.rows[s];
    row.coeffs.resize(J + 1);
    row.coeffs[0] = 1.0;
    row.relation = s >= first_constrained ? lp::Relation::greater_equal : lp::Relation::equal;
    row.rhs = s == 0 ? 1.0 : 0.0;
  }
  std::vector<double> vals(m + 1);
  for (int j = 0; j < J; ++j) {
    basis.eval(grid[j], vals);
    for (int s = 0; s <= m; ++s) prog.rows[s].coeffs[j + 1] = vals[s];
  }
  const auto sol = lp::solve(prog, lp_options);
  if (sol.status != lp::Status::optimal) {
    throw BoundError("design LP solve ended with status " + lp::to_string(sol.status));
  }
  RelaxedSolution out;
  out.coeffs.assign(sol.duals.begin(), sol.duals.end());
  for (int s = first_constrained; s <= m; ++s) out.coeffs[s] = std::min(0.0, out.coeffs[s]);
  double total = 0.0;
  for (double c : out.coeffs) total += c;
  if (!(total > 0.0)) throw BoundError("design LP returned F(1) <= 0");
  for (double& c : out.coeffs) c /= total;
  out.lp_objective = sol.objective;
  return out;
}

struct ScanSpec {
  double lo;
  double hi;
  double sign;  // +1: violation is F (codes), -1: violation is -F (designs)
};

template <class Solve>
LPBracket cutting_plane_from(const NormalizedBasis& basis, const ScanSpec& spec,
                             const SolveOptions& options, int initial, Solve& solve_grid,
                             RelaxedSolution& final, double& worst_violation) {
  const int m = basis.max_degree();
  std::vector<double> grid = chebyshev_lobatto(spec.lo, spec.hi, initial);
  LPBracket bracket;
  bracket.m_used = m;
  for (int round = 1;; ++round) {
    final = solve_grid(grid);
    bracket.rounds = round;
    if (round >= options.max_rounds) break;
    auto g = [&](double t) { return spec.sign * basis.sum(final.coeffs, t); };
    auto maxima = scan_maxima(g, spec.lo, spec.hi, options.scan_factor * m + 1, 4 * m + 8);
    std::vector<Extremum> cuts;
    for (const auto& e : maxima) {
      if (e.value > options.cut_tol) cuts.push_back(e);
    }
    if (cuts.empty()) break;
    if (!insert_points(grid, cuts)) break;
  }
  bracket.grid_size = static_cast<int>(grid.size());
  auto g = [&](double t) { return spec.sign * basis.sum(final.coeffs, t); };
  const auto worst = scan_maxima(g, spec.lo, spec.hi, options.verify_points, options.refine_extrema);
  worst_violation = std::max(0.0, worst.empty() ? 0.0 : worst.front().value);
  return bracket;
}

template <class Solve>
LPBracket cutting_plane(const NormalizedBasis& basis, const ScanSpec& spec,
                        const SolveOptions& options, Solve&& solve_grid, RelaxedSolution& final,
                        double& worst_violation) {
  const int m = basis.max_degree();
  if (options.initial_grid > 0) {
    return cutting_plane_from(basis, spec, options, options.initial_grid, solve_grid, final,
                              worst_violation);
  }
  // Simplex paths through ill-conditioned bases depend on the starting grid;
  // coarser grids are tried before giving up.
  const int sizes[] = {4 * m + 1, 3 * m + 1, 2 * m + 1};
  for (int i = 0;; ++i) {
    try {
      return cutting_plane_from(basis, spec, options, sizes[i], solve_grid, final,
                                worst_violation);
    } catch (const NumericalError&) {
      if (i == 2) throw;
    }
  }
}

}  // namespace

LPBracket code_bound(const CodeProblem& problem, const SolveOptions& options) {
  problem.validate();
  const auto family = PolyFamily::sphere(problem.n);
  const NormalizedBasis basis(family, problem.m);
  const ScanSpec spec{-1.0, problem.delta(), 1.0};
  RelaxedSolution relaxed;
  double v = 0.0;
  LPBracket bracket = cutting_plane(
      basis, spec, options,
      [&](const std::vector<double>& grid) { return solve_code_grid(basis, grid, options.lp); },
      relaxed, v);
  if (v >= 1.0) {
    throw BoundError("unrepairable code certificate (violation " + std::to_string(v) +
                     "); increase the constraint grid");
  }
  const double f1 = [&] {
    double acc = 0.0;
    for (double c : relaxed.coeffs) acc += c;
    return acc;
  }();
  // (F - v)/(1 - v): keeps a_0 = 1 and a_s >= 0, and is <= 0 on the interval.
  std::vector<double> repaired(relaxed.coeffs);
  for (std::size_t s = 1; s < repaired.size(); ++s) repaired[s] /= (1.0 - v);
  bracket.relaxed_value = std::min(relaxed.lp_objective, f1);
  bracket.certified_value = f1 + v * (f1 - 1.0) / (1.0 - v);
  bracket.max_violation = v;
  bracket.certificate = CoeffVector(family, std::move(repaired));
  bracket.trace.push_back({problem.m, bracket.relaxed_value, bracket.certified_value});
  return bracket;
}

LPBracket design_bound(const DesignProblem& problem, const SolveOptions& options) {
  problem.validate();
  const auto family = PolyFamily::sphere(problem.n);
  const NormalizedBasis basis(family, problem.m);
  const ScanSpec spec{-1.0, 1.0, -1.0};
  const int first = problem.first_constrained_degree();
  RelaxedSolution relaxed;
  double v = 0.0;
  LPBracket bracket = cutting_plane(
      basis, spec, options,
      [&](const std::vector<double>& grid) {
        return solve_design_grid(basis, grid, first, options.lp);
      },
      relaxed, v);
  const double a0 = relaxed.coeffs[0];
  if (!(a0 > 0.0)) {
    throw BoundError("degenerate design LP optimum (a_0 <= 0); constraint grid too coarse");
  }
  // (F + v)/(1 + v): F(1) stays 1, constrained coefficients stay <= 0.
  std::vector<double> repaired(relaxed.coeffs);
  repaired[0] = (a0 + v) / (1.0 + v);
  for (std::size_t s = 1; s < repaired.size(); ++s) repaired[s] /= (1.0 + v);
  const double lp_a0 = relaxed.lp_objective > 0.0 ? std::min(relaxed.lp_objective, a0) : a0;
  bracket.relaxed_value = 1.0 / lp_a0;
  bracket.certified_value = (1.0 + v) / (a0 + v);
  bracket.max_violation = v;
  bracket.certificate = CoeffVector(family, std::move(repaired));
  bracket.trace.push_back({problem.m, bracket.relaxed_value, bracket.certified_value});
  return bracket;
}

namespace {

template <class Solve>
LPBracket degree_sweep(int m_start, int m_max, const SolveOptions& options, Solve&& solve_at) {
  std::optional<LPBracket> last;
  std::vector<DegreeStep> trace;
  std::string last_error;
  int m = std::min(m_start, m_max);
  while (true) {
    try {
      LPBracket b = solve_at(m);
      trace.push_back({m, b.relaxed_value, b.certified_value});
      const bool converged =
          last && std::fabs(b.certified_value - last->certified_value) <=
                      options.m_rel_change * std::fabs(last->certified_value);
      last = std::move(b);
      if (converged) break;
    } catch (const BoundError& e) {
      last_error = e.what();
    } catch (const NumericalError& e) {
      last_error = e.what();
    }
    if (m >= m_max) break;
    m = std::min(2 * m, m_max);
  }
  if (!last) throw BoundError("no degree up to " + std::to_string(m_max) + " succeeded: " + last_error);
  last->trace = std::move(trace);
  return *std::move(last);
}

void require_sphere_family(const CoeffVector& f, int n) {
  if (f.family().alpha() != PolyFamily::sphere(n).alpha()) {
    throw DomainError("certificate family does not match dimension " + std::to_string(n));
  }
}

}  // namespace

LPBracket code_bound_auto(int n, double theta, const SolveOptions& options) {
  return degree_sweep(8, options.m_max, options, [&](int m) {
    return code_bound(CodeProblem{n, theta, m}, options);
  });
}

LPBracket design_bound_auto(int n, int k, Convention convention, const SolveOptions& options) {
  if (options.m_max < k) throw DomainError("m_max must be at least k");
  return degree_sweep(k, options.m_max, options, [&](int m) {
    return design_bound(DesignProblem{n, k, m, convention}, options);
  });
}

VerifyResult verify_certificate(const CodeProblem& problem, const CoeffVector& f,
                                const SolveOptions& options) {
  problem.validate();
  VerifyResult out;
  const auto c = f.normalized();
  double coeff_excess = std::fabs(c[0] - 1.0);
  for (std::size_t s = 1; s < c.size(); ++s) coeff_excess = std::max(coeff_excess, -c[s]);
  require_sphere_family(f, problem.n);
  const NormalizedBasis basis(f.family(), f.degree());
  auto g = [&](double t) { return basis.sum(c, t); };
  const auto maxima =
      scan_maxima(g, -1.0, problem.delta(), options.verify_points, options.refine_extrema);
  const double scan_excess = std::max(0.0, maxima.front().value);
  out.worst_t = maxima.front().t;
  out.max_violation = std::max(coeff_excess, scan_excess);
  out.feasible = coeff_excess <= 1e-12 && scan_excess <= 1e-10;
  return out;
}

VerifyResult verify_certificate(const DesignProblem& problem, const CoeffVector& f,
                                const SolveOptions& options) {
  // The certificate's own degree replaces the problem's m.
  DesignProblem checked = problem;
  checked.m = std::max(f.degree(), problem.k);
  checked.validate();
  VerifyResult out;
  const auto c = f.normalized();
  double total = 0.0;
  for (double x : c) total += x;
  double coeff_excess = std::fabs(total - 1.0);
  for (std::size_t s = problem.first_constrained_degree(); s < c.size(); ++s) {
    coeff_excess = std::max(coeff_excess, c[s]);
  }
  require_sphere_family(f, problem.n);
  const NormalizedBasis basis(f.family(), f.degree());
  auto g = [&](double t) { return -basis.sum(c, t); };
  const auto maxima = scan_maxima(g, -1.0, 1.0, options.verify_points, options.refine_extrema);
  const double scan_excess = std::max(0.0, maxima.front().value);
  out.worst_t = maxima.front().t;
  out.max_violation = std::max(coeff_excess, scan_excess);
  out.feasible = coeff_excess <= 1e-12 && scan_excess <= 1e-10;
  return out;
}

std::vector<SweepResult> bound_sweep(std::span<const Problem> problems,
                                     const SolveOptions& options) {
  std::vector<SweepResult> results(problems.size());
  auto run_one = [&](std::size_t i) {
    results[i].problem = problems[i];
    try {
      results[i].bracket = std::visit(
          [&](const auto& p) -> LPBracket {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, CodeProblem>) {
              if (!options.auto_degree) return code_bound(p, options);
              SolveOptions o = options;
              o.m_max = p.m;
              return code_bound_auto(p.n, p.theta, o);
            } else {
              if (!options.auto_degree) return design_bound(p, options);
              SolveOptions o = options;
              o.m_max = p.m;
              return design_bound_auto(p.n, p.k, p.convention, o);
            }
          },
          problems[i]);
    } catch (const std::exception& e) {
      results[i].error = e.what();
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(problems.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < problems.size(); ++i) run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < problems.size(); i = next++) run_one(i);
      });
    }
  }
  return results;
}

}  // namespace delsarte
