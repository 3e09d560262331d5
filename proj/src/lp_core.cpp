#include "delsarte/lp_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "delsarte/errors.hpp"

namespace delsarte::lp {

std::string to_string(Status status) {
  switch (status) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration-limit";
  }
  return "unknown";
}

int LinearProgram::add_variable(double cost, double lo, double hi) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  for (auto& row : rows) row.coeffs.push_back(0.0);
  return static_cast<int>(objective.size()) - 1;
}

void LinearProgram::add_row(std::vector<double> coeffs, Relation relation, double rhs) {
  rows.push_back(Row{std::move(coeffs), relation, rhs});
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (lower.size() != n || upper.size() != n) {
    throw DomainError("bound vectors do not match the number of variables");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) throw DomainError("non-finite objective coefficient");
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
        lower[j] == kInf || upper[j] == -kInf) {
      throw DomainError("invalid bounds on variable " + std::to_string(j));
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].coeffs.size() != n) {
      throw DomainError("row " + std::to_string(i) + " has wrong length");
    }
    if (!std::isfinite(rows[i].rhs)) throw DomainError("non-finite right-hand side");
    for (double a : rows[i].coeffs) {
      if (!std::isfinite(a)) throw DomainError("non-finite constraint coefficient");
    }
  }
}

namespace {

enum class VarState { basic, at_lower, at_upper, free_zero };

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SolverOptions& options)
      : lp_(lp), opt_(options), m_(static_cast<int>(lp.num_rows())),
        n_struct_(static_cast<int>(lp.num_variables())) {
    build();
  }

  LPSolution run();

 private:
  void build();
  void compute_scaling();
  void refactor();
  void compute_basic_values();
  Status iterate(const std::vector<double>& cost, int& iterations);
  Status dual_cleanup(const std::vector<double>& cost, int& iterations);
  double column_dot(const std::vector<double>& y, int j) const;
  double condition_estimate() const;
  std::string condition_message() const;
  bool update_inverse(int leave, int entering, const std::vector<double>& alpha, double limit);
  void fill_solution(LPSolution& out) const;

  const LinearProgram& lp_;
  SolverOptions opt_;
  int m_;
  int n_struct_;
  int n_total_ = 0;
  int first_artificial_ = 0;

  std::vector<std::vector<double>> cols_;  // column-major, each of length m
  std::vector<double> lo_, hi_, x_;
  std::vector<VarState> state_;
  std::vector<int> head_;                  // basic variable per basis row
  std::vector<double> binv_;               // m x m row-major
  std::vector<double> rhs_;
  std::vector<double> original_rhs_;
  std::vector<double> row_scale_, col_scale_;
  std::vector<double> col_norm_;           // 1-norm of each column
  std::vector<double> backup_;             // B^{-1} before the last update
  std::vector<double> phase2_cost_;
};

void Simplex::compute_scaling() {
  row_scale_.assign(m_, 1.0);
  col_scale_.assign(n_struct_, 1.0);
  if (!opt_.scale) return;
  auto pow2 = [](double v) { return std::exp2(std::round(std::log2(v))); };
  // Geometric passes followed by row equilibration, all in powers of two so
  // that scaling introduces no rounding.
  for (int pass = 0; pass < 4; ++pass) {
    for (int i = 0; i < m_; ++i) {
      double lo = kInf, hi = 0.0;
      for (int j = 0; j < n_struct_; ++j) {
        const double a = std::fabs(lp_.rows[i].coeffs[j]) * row_scale_[i] * col_scale_[j];
        if (a == 0.0) continue;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      if (hi > 0.0) row_scale_[i] *= pow2(1.0 / std::sqrt(lo * hi));
    }
    for (int j = 0; j < n_struct_; ++j) {
      double lo = kInf, hi = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = std::fabs(lp_.rows[i].coeffs[j]) * row_scale_[i] * col_scale_[j];
        if (a == 0.0) continue;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      if (hi > 0.0 && opt_.scale_columns) col_scale_[j] *= pow2(1.0 / std::sqrt(lo * hi));
    }
  }
  for (int i = 0; i < m_; ++i) {
    double hi = 0.0;
    for (int j = 0; j < n_struct_; ++j) {
      hi = std::max(hi, std::fabs(lp_.rows[i].coeffs[j]) * row_scale_[i] * col_scale_[j]);
    }
    if (hi > 0.0) row_scale_[i] *= pow2(1.0 / hi);
  }
}

void Simplex::build() {
  compute_scaling();
  rhs_.resize(m_);
  original_rhs_.resize(m_);
  for (int i = 0; i < m_; ++i) {
    original_rhs_[i] = lp_.rows[i].rhs * row_scale_[i];
    // Deterministic relaxing perturbation; breaks the ties of degenerate
    // vertices and is removed before the solution is reported.
    const double frac = std::fmod(0.6180339887498949 * (i + 1), 1.0);
    const double eps = opt_.perturbation * (1.0 + frac) * std::max(1.0, std::fabs(original_rhs_[i]));
    const double dir = lp_.rows[i].relation == Relation::greater_equal ? -1.0 : 1.0;
    rhs_[i] = original_rhs_[i] + dir * eps;
  }

  for (int j = 0; j < n_struct_; ++j) {
    std::vector<double> col(m_);
    for (int i = 0; i < m_; ++i) col[i] = lp_.rows[i].coeffs[j] * row_scale_[i] * col_scale_[j];
    cols_.push_back(std::move(col));
    const double lo = lp_.lower[j] / col_scale_[j];
    const double hi = lp_.upper[j] / col_scale_[j];
    lo_.push_back(lo);
    hi_.push_back(hi);
    double start = 0.0;
    VarState st = VarState::free_zero;
    if (std::isfinite(lo)) {
      start = lo;
      st = VarState::at_lower;
    } else if (std::isfinite(hi)) {
      start = hi;
      st = VarState::at_upper;
    }
    x_.push_back(start);
    state_.push_back(st);
  }
  const double sign = lp_.sense == Sense::maximize ? -1.0 : 1.0;
  for (int j = 0; j < n_struct_; ++j) {
    phase2_cost_.push_back(sign * lp_.objective[j] * col_scale_[j]);
  }

  // Residual of each row with structurals at their starting values.
  std::vector<double> resid(rhs_);
  for (int j = 0; j < n_struct_; ++j) {
    if (x_[j] == 0.0) continue;
    for (int i = 0; i < m_; ++i) resid[i] -= cols_[j][i] * x_[j];
  }

  head_.assign(m_, -1);
  std::vector<int> slack_of(m_, -1);
  for (int i = 0; i < m_; ++i) {
    const Relation rel = lp_.rows[i].relation;
    if (rel == Relation::equal) continue;
    const double coef = rel == Relation::less_equal ? 1.0 : -1.0;
    std::vector<double> col(m_, 0.0);
    col[i] = coef;
    cols_.push_back(std::move(col));
    lo_.push_back(0.0);
    hi_.push_back(kInf);
    const int idx = static_cast<int>(cols_.size()) - 1;
    slack_of[i] = idx;
    const double value = resid[i] * coef;
    if (value >= 0.0) {
      x_.push_back(value);
      state_.push_back(VarState::basic);
      head_[i] = idx;
    } else {
      x_.push_back(0.0);
      state_.push_back(VarState::at_lower);
    }
    phase2_cost_.push_back(0.0);
  }
  first_artificial_ = static_cast<int>(cols_.size());
  for (int i = 0; i < m_; ++i) {
    if (head_[i] >= 0) continue;
    std::vector<double> col(m_, 0.0);
    col[i] = resid[i] >= 0.0 ? 1.0 : -1.0;
    cols_.push_back(std::move(col));
    lo_.push_back(0.0);
    hi_.push_back(kInf);
    x_.push_back(std::fabs(resid[i]));
    state_.push_back(VarState::basic);
    head_[i] = static_cast<int>(cols_.size()) - 1;
    phase2_cost_.push_back(0.0);
  }
  n_total_ = static_cast<int>(cols_.size());
  for (const auto& col : cols_) {
    double norm = 0.0;
    for (double v : col) norm += std::fabs(v);
    col_norm_.push_back(norm > 0.0 ? norm : 1.0);
  }
  refactor();
}

void Simplex::refactor() {
  // Gauss-Jordan inversion of the basis with partial pivoting. The condition
  // estimate is taken on the column-equilibrated basis, which is what governs
  // the accuracy of the duals and the basic values.
  std::vector<double> a(static_cast<std::size_t>(m_) * m_);
  for (int k = 0; k < m_; ++k) {
    const auto& col = cols_[head_[k]];
    for (int i = 0; i < m_; ++i) a[i * m_ + k] = col[i];
  }
  binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
  for (int c = 0; c < m_; ++c) {
    int piv = c;
    for (int r = c + 1; r < m_; ++r) {
      if (std::fabs(a[r * m_ + c]) > std::fabs(a[piv * m_ + c])) piv = r;
    }
    const double p = a[piv * m_ + c];
    if (std::fabs(p) <= 1e-300) throw NumericalError("singular simplex basis");
    if (piv != c) {
      for (int k = 0; k < m_; ++k) {
        std::swap(a[piv * m_ + k], a[c * m_ + k]);
        std::swap(binv_[piv * m_ + k], binv_[c * m_ + k]);
      }
    }
    const double inv = 1.0 / p;
    for (int k = 0; k < m_; ++k) {
      a[c * m_ + k] *= inv;
      binv_[c * m_ + k] *= inv;
    }
    for (int r = 0; r < m_; ++r) {
      if (r == c) continue;
      const double f = a[r * m_ + c];
      if (f == 0.0) continue;
      for (int k = c; k < m_; ++k) a[r * m_ + k] -= f * a[c * m_ + k];
      for (int k = 0; k < m_; ++k) binv_[r * m_ + k] -= f * binv_[c * m_ + k];
    }
  }
  if (!(condition_estimate() <= opt_.max_condition)) throw NumericalError(condition_message());
  compute_basic_values();
}

// 1-norm condition of the column-equilibrated basis: ||B E||_1 = 1 and row k
// of (B E)^{-1} is row k of B^{-1} times the 1-norm of basic column k.
double Simplex::condition_estimate() const {
  double norm_inv = 0.0;
  for (int i = 0; i < m_; ++i) {
    double s = 0.0;
    for (int k = 0; k < m_; ++k) s += std::fabs(binv_[k * m_ + i]) * col_norm_[head_[k]];
    norm_inv = std::max(norm_inv, s);
  }
  return norm_inv;
}

// Product-form update of B^{-1} for column `entering` replacing basis row
// `leave`. A pivot that would push the condition estimate past `limit` is
// undone and reported as rejected. Pivots are first held to a hundredth of
// the hard limit, leaving room for drift between updated and fresh inverses;
// the hard limit applies only once every candidate has been rejected.
std::string Simplex::condition_message() const {
  std::ostringstream msg;
  msg << "simplex basis condition estimate exceeds " << opt_.max_condition
      << " (current basis " << condition_estimate() << ")";
  return msg.str();
}

bool Simplex::update_inverse(int leave, int entering, const std::vector<double>& alpha,
                             double limit) {
  backup_ = binv_;
  const int out = head_[leave];
  head_[leave] = entering;
  const double piv = alpha[leave];
  double* prow = &binv_[static_cast<std::size_t>(leave) * m_];
  for (int i = 0; i < m_; ++i) prow[i] /= piv;
  for (int k = 0; k < m_; ++k) {
    if (k == leave || alpha[k] == 0.0) continue;
    const double f = alpha[k];
    double* row = &binv_[static_cast<std::size_t>(k) * m_];
    for (int i = 0; i < m_; ++i) row[i] -= f * prow[i];
  }
  if (condition_estimate() <= limit) return true;
  binv_.swap(backup_);
  head_[leave] = out;
  return false;
}

void Simplex::compute_basic_values() {
  std::vector<double> r(rhs_);
  for (int j = 0; j < n_total_; ++j) {
    if (state_[j] == VarState::basic || x_[j] == 0.0) continue;
    for (int i = 0; i < m_; ++i) r[i] -= cols_[j][i] * x_[j];
  }
  for (int k = 0; k < m_; ++k) {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v += binv_[k * m_ + i] * r[i];
    x_[head_[k]] = v;
  }
}

double Simplex::column_dot(const std::vector<double>& y, int j) const {
  const auto& col = cols_[j];
  double acc = 0.0;
  for (int i = 0; i < m_; ++i) acc += y[i] * col[i];
  return acc;
}

Status Simplex::iterate(const std::vector<double>& cost, int& iterations) {
  std::vector<double> y(m_), alpha(m_);
  std::vector<char> barred(n_total_, 0);
  bool any_barred = false;
  double pivot_limit = 0.01 * opt_.max_condition;
  int degenerate_run = 0;
  bool bland = false;
  int since_refactor = 0;
  constexpr double kPivTol = 1e-11;

  while (true) {
    if (iterations >= opt_.max_iter) return Status::iteration_limit;
    if (since_refactor >= opt_.refactor_interval) {
      refactor();
      since_refactor = 0;
    }

    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += cost[head_[k]] * binv_[k * m_ + i];
      y[i] = v;
    }

    int entering = -1;
    double best = 0.0;
    double dir = 0.0;
    for (int j = 0; j < n_total_; ++j) {
      const VarState st = state_[j];
      if (st == VarState::basic || lo_[j] == hi_[j] || barred[j]) continue;
      const double d = cost[j] - column_dot(y, j);
      double candidate_dir = 0.0;
      if (d < -opt_.opt_tol && (st == VarState::at_lower || st == VarState::free_zero)) {
        candidate_dir = 1.0;
      } else if (d > opt_.opt_tol && (st == VarState::at_upper || st == VarState::free_zero)) {
        candidate_dir = -1.0;
      }
      if (candidate_dir == 0.0) continue;
      if (bland) {
        entering = j;
        dir = candidate_dir;
        break;
      }
      if (std::fabs(d) > best) {
        best = std::fabs(d);
        entering = j;
        dir = candidate_dir;
      }
    }
    if (entering < 0) {
      if (any_barred) {
        if (pivot_limit >= opt_.max_condition) throw NumericalError(condition_message());
        pivot_limit = opt_.max_condition;
        std::fill(barred.begin(), barred.end(), 0);
        any_barred = false;
        continue;
      }
      return Status::optimal;
    }

    const auto& col = cols_[entering];
    for (int k = 0; k < m_; ++k) {
      double v = 0.0;
      for (int i = 0; i < m_; ++i) v += binv_[k * m_ + i] * col[i];
      alpha[k] = v;
    }

    // Two-pass ratio test: basic k moves by -dir * step * alpha[k]. The first
    // pass bounds the step with every bound relaxed by feas_tol; the second
    // picks, among rows blocking within that bound, the largest pivot (the
    // lowest variable index under Bland).
    auto row_limit = [&](int k, double slack) {
      const double rate = -dir * alpha[k];
      const int b = head_[k];
      if (rate < 0.0 && std::isfinite(lo_[b])) return (x_[b] - lo_[b] + slack) / -rate;
      if (rate > 0.0 && std::isfinite(hi_[b])) return (hi_[b] - x_[b] + slack) / rate;
      return kInf;
    };
    double relaxed_bound = kInf;
    for (int k = 0; k < m_; ++k) {
      if (std::fabs(alpha[k]) <= kPivTol) continue;
      relaxed_bound = std::min(relaxed_bound, std::max(0.0, row_limit(k, opt_.feas_tol)));
    }
    int leave = -1;
    if (std::isfinite(relaxed_bound)) {
      for (int k = 0; k < m_; ++k) {
        if (std::fabs(alpha[k]) <= kPivTol) continue;
        const double limit = std::max(0.0, row_limit(k, 0.0));
        if (limit > relaxed_bound) continue;
        const bool better = leave < 0 || (bland ? head_[k] < head_[leave]
                                                : std::fabs(alpha[k]) > std::fabs(alpha[leave]));
        if (better) leave = k;
      }
    }
    double step = kInf;
    bool leave_to_upper = false;
    if (leave >= 0) {
      const int b = head_[leave];
      const double rate = -dir * alpha[leave];
      leave_to_upper = rate > 0.0;
      step = leave_to_upper ? std::max(0.0, (hi_[b] - x_[b]) / rate)
                            : std::max(0.0, (x_[b] - lo_[b]) / -rate);
    }

    const double span = hi_[entering] - lo_[entering];
    const bool flip = std::isfinite(span) && span <= step;
    if (!flip && leave < 0) return Status::unbounded;
    if (flip) step = span;

    const int out = flip ? -1 : head_[leave];
    if (!flip && !update_inverse(leave, entering, alpha, pivot_limit)) {
      barred[entering] = 1;
      any_barred = true;
      continue;
    }
    if (any_barred) {
      std::fill(barred.begin(), barred.end(), 0);
      any_barred = false;
    }
    pivot_limit = 0.01 * opt_.max_condition;
    ++iterations;
    ++since_refactor;
    if (step <= 1e-12) {
      if (++degenerate_run >= opt_.bland_after) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }

    x_[entering] += dir * step;
    for (int k = 0; k < m_; ++k) x_[k == leave && !flip ? out : head_[k]] -= dir * step * alpha[k];

    if (flip) {
      state_[entering] = dir > 0 ? VarState::at_upper : VarState::at_lower;
      x_[entering] = dir > 0 ? hi_[entering] : lo_[entering];
      continue;
    }

    state_[out] = leave_to_upper ? VarState::at_upper : VarState::at_lower;
    x_[out] = leave_to_upper ? hi_[out] : lo_[out];
    state_[entering] = VarState::basic;
  }
}

// Bounded dual simplex from a dual feasible basis: drives the primal
// infeasibility left by removing the perturbation back to zero.
Status Simplex::dual_cleanup(const std::vector<double>& cost, int& iterations) {
  std::vector<double> y(m_), rho(m_), alpha(m_);
  std::vector<char> barred(n_total_, 0);
  bool any_barred = false;
  double pivot_limit = 0.01 * opt_.max_condition;
  constexpr double kPivTol = 1e-11;
  int since_refactor = 0;
  while (true) {
    if (iterations >= opt_.max_iter) return Status::iteration_limit;
    if (since_refactor >= opt_.refactor_interval) {
      refactor();
      since_refactor = 0;
    }
    int r = -1;
    double worst = opt_.feas_tol;
    for (int k = 0; k < m_; ++k) {
      const int b = head_[k];
      const double below = lo_[b] - x_[b];
      const double above = x_[b] - hi_[b];
      const double infeas = std::max(below, above);
      if (infeas > worst) {
        worst = infeas;
        r = k;
      }
    }
    if (r < 0) return Status::optimal;
    const int leaving = head_[r];
    const bool raise = x_[leaving] < lo_[leaving];

    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += cost[head_[k]] * binv_[k * m_ + i];
      y[i] = v;
    }
    for (int i = 0; i < m_; ++i) rho[i] = binv_[r * m_ + i];

    int entering = -1;
    double best_ratio = kInf;
    double best_pivot = 0.0;
    for (int j = 0; j < n_total_; ++j) {
      const VarState st = state_[j];
      if (st == VarState::basic || lo_[j] == hi_[j] || barred[j]) continue;
      const double arj = column_dot(rho, j);
      if (std::fabs(arj) <= kPivTol) continue;
      // Moving x_j by delta changes x_leaving by -arj * delta.
      const bool can_up = st == VarState::at_lower || st == VarState::free_zero;
      const bool can_down = st == VarState::at_upper || st == VarState::free_zero;
      const bool ok = raise ? ((arj < 0 && can_up) || (arj > 0 && can_down))
                            : ((arj > 0 && can_up) || (arj < 0 && can_down));
      if (!ok) continue;
      const double dj = cost[j] - column_dot(y, j);
      const double ratio = std::fabs(dj) / std::fabs(arj);
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && std::fabs(arj) > best_pivot)) {
        best_ratio = std::min(best_ratio, ratio);
        best_pivot = std::fabs(arj);
        entering = j;
      }
    }
    if (entering < 0) {
      if (any_barred) {
        if (pivot_limit >= opt_.max_condition) throw NumericalError(condition_message());
        pivot_limit = opt_.max_condition;
        std::fill(barred.begin(), barred.end(), 0);
        any_barred = false;
        continue;
      }
      return Status::infeasible;
    }

    const auto& col = cols_[entering];
    for (int k = 0; k < m_; ++k) {
      double v = 0.0;
      for (int i = 0; i < m_; ++i) v += binv_[k * m_ + i] * col[i];
      alpha[k] = v;
    }
    const double target = raise ? lo_[leaving] : hi_[leaving];
    const double delta = (x_[leaving] - target) / alpha[r];
    if (!update_inverse(r, entering, alpha, pivot_limit)) {
      barred[entering] = 1;
      any_barred = true;
      continue;
    }
    if (any_barred) {
      std::fill(barred.begin(), barred.end(), 0);
      any_barred = false;
    }
    pivot_limit = 0.01 * opt_.max_condition;
    x_[entering] += delta;
    for (int k = 0; k < m_; ++k) {
      if (k != r) x_[head_[k]] -= delta * alpha[k];
    }
    x_[leaving] = target;
    state_[leaving] = raise ? VarState::at_lower : VarState::at_upper;
    state_[entering] = VarState::basic;
    ++iterations;
    ++since_refactor;
  }
}

LPSolution Simplex::run() {
  LPSolution out;
  int iterations = 0;

  if (first_artificial_ < n_total_) {
    std::vector<double> phase1(n_total_, 0.0);
    for (int j = first_artificial_; j < n_total_; ++j) phase1[j] = 1.0;
    const Status st = iterate(phase1, iterations);
    if (st == Status::iteration_limit) {
      out.status = st;
      out.iterations = iterations;
      fill_solution(out);
      return out;
    }
    double infeasibility = 0.0;
    double scale = 1.0;
    for (double r : original_rhs_) scale = std::max(scale, std::fabs(r));
    for (int j = first_artificial_; j < n_total_; ++j) infeasibility += x_[j];
    if (infeasibility > opt_.feas_tol * scale) {
      out.status = Status::infeasible;
      out.iterations = iterations;
      fill_solution(out);
      return out;
    }
    for (int j = first_artificial_; j < n_total_; ++j) {
      hi_[j] = 0.0;
      if (state_[j] != VarState::basic) {
        state_[j] = VarState::at_lower;
        x_[j] = 0.0;
      }
    }
    refactor();
  }

  phase2_cost_.resize(n_total_, 0.0);
  out.status = iterate(phase2_cost_, iterations);
  if (out.status == Status::optimal && rhs_ != original_rhs_) {
    rhs_ = original_rhs_;
    refactor();
    out.status = dual_cleanup(phase2_cost_, iterations);
    if (out.status == Status::optimal) out.status = iterate(phase2_cost_, iterations);
  }
  if (out.status == Status::optimal) refactor();
  out.iterations = iterations;
  fill_solution(out);
  return out;
}

void Simplex::fill_solution(LPSolution& out) const {
  const double sign = lp_.sense == Sense::maximize ? -1.0 : 1.0;
  out.x.resize(n_struct_);
  for (int j = 0; j < n_struct_; ++j) out.x[j] = x_[j] * col_scale_[j];
  double obj = 0.0;
  for (int j = 0; j < n_struct_; ++j) obj += lp_.objective[j] * out.x[j];
  out.objective = obj;

  std::vector<double> y(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    double v = 0.0;
    for (int k = 0; k < m_; ++k) v += phase2_cost_[head_[k]] * binv_[k * m_ + i];
    y[i] = v;
  }
  double dual_obj = 0.0;
  for (int i = 0; i < m_; ++i) dual_obj += y[i] * original_rhs_[i];
  for (int j = 0; j < n_total_; ++j) {
    if (state_[j] == VarState::basic || x_[j] == 0.0) continue;
    dual_obj += (phase2_cost_[j] - column_dot(y, j)) * x_[j];
  }
  out.duals.resize(m_);
  for (int i = 0; i < m_; ++i) out.duals[i] = sign * y[i] * row_scale_[i];
  out.dual_objective = sign * dual_obj;

  out.row_activity.assign(m_, 0.0);
  out.residuals.assign(m_, 0.0);
  out.max_residual = 0.0;
  for (int i = 0; i < m_; ++i) {
    double act = 0.0;
    for (int j = 0; j < n_struct_; ++j) act += lp_.rows[i].coeffs[j] * out.x[j];
    out.row_activity[i] = act;
    double excess = 0.0;
    const double rhs = lp_.rows[i].rhs;
    switch (lp_.rows[i].relation) {
      case Relation::less_equal: excess = std::max(0.0, act - rhs); break;
      case Relation::greater_equal: excess = std::max(0.0, rhs - act); break;
      case Relation::equal: excess = std::fabs(act - rhs); break;
    }
    out.residuals[i] = excess;
    out.max_residual = std::max(out.max_residual, excess);
  }
  for (int j = 0; j < n_struct_; ++j) {
    const double below = std::isfinite(lp_.lower[j]) ? std::max(0.0, lp_.lower[j] - out.x[j]) : 0.0;
    const double above = std::isfinite(lp_.upper[j]) ? std::max(0.0, out.x[j] - lp_.upper[j]) : 0.0;
    out.max_residual = std::max({out.max_residual, below, above});
  }
}

}  // namespace

LPSolution solve(const LinearProgram& lp, const SolverOptions& options) {
  lp.validate();
  Simplex simplex(lp, options);
  return simplex.run();
}

}  // namespace delsarte::lp
