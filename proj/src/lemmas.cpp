#include "delsarte/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "delsarte/bounds.hpp"
#include "delsarte/errors.hpp"
#include "delsarte/jacobi.hpp"
#include "delsarte/scan.hpp"
#include "delsarte/special.hpp"

namespace delsarte {

bool CheckRun::passed() const {
  for (const auto& r : records) {
    if (r.summary && r.asserted && !r.holds) return false;
  }
  return true;
}

const CheckReport* CheckRun::find(const std::string& id, bool summary) const {
  for (const auto& r : records) {
    if (r.id == id && r.summary == summary) return &r;
  }
  return nullptr;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("loglog_slope needs two or more matching points");
  }
  const double count = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw DomainError("loglog_slope needs positive data");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (sxx == 0.0) throw DomainError("loglog_slope needs distinct x values");
  return sxy / sxx;
}

namespace {

constexpr double kMonotoneTol = 1e-12;

std::vector<int> values(const IntRange& r) {
  if (r.step <= 0) throw DomainError("range step must be positive");
  if (r.hi < r.lo) throw DomainError("empty parameter range");
  std::vector<int> out;
  for (int v = r.lo; v <= r.hi; v += r.step) out.push_back(v);
  return out;
}

ParamRange range_of(const std::string& name, const IntRange& r) {
  return {name, static_cast<double>(r.lo), static_cast<double>(r.hi)};
}

template <class T>
ParamRange range_of(const std::string& name, const std::vector<T>& v) {
  if (v.empty()) throw DomainError("empty parameter list for " + name);
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {name, static_cast<double>(*lo), static_cast<double>(*hi)};
}

// Running minimum of margins with the parameters where it occurred.
struct Tracker {
  double margin = std::numeric_limits<double>::infinity();
  ParamPoint where;
  int cases = 0;

  void add(double m, ParamPoint at) {
    ++cases;
    if (m < margin || where.empty()) {
      margin = m;
      where = std::move(at);
    }
  }
};

CheckReport summary(const std::string& id, std::vector<ParamRange> ranges, const Tracker& t,
                    double threshold) {
  CheckReport r;
  r.id = id;
  r.ranges = std::move(ranges);
  r.cases = t.cases;
  r.worst_case = t.where;
  r.worst_margin = t.cases > 0 ? t.margin : 0.0;
  r.holds = t.cases > 0 && t.margin >= threshold;
  return r;
}

CheckReport case_record(const std::string& id, const ParamPoint& at, bool holds, double margin) {
  CheckReport r;
  r.id = id;
  r.summary = false;
  for (const auto& [name, v] : at) r.ranges.push_back({name, v, v});
  r.worst_case = at;
  r.worst_margin = margin;
  r.holds = holds;
  r.cases = 1;
  return r;
}

// Smallest relative decrease between consecutive samples of g on [lo, 1].
template <class G>
double decrease_margin(G&& g, double lo, int grid) {
  double worst = std::numeric_limits<double>::infinity();
  double prev = g(lo);
  for (int i = 1; i < grid; ++i) {
    const double t = i == grid - 1 ? 1.0 : lo + (1.0 - lo) * i / (grid - 1);
    const double cur = g(t);
    const double scale = std::max(std::fabs(prev), std::fabs(cur));
    if (scale > 0.0) worst = std::min(worst, (prev - cur) / scale);
    prev = cur;
  }
  return worst;
}

// C^{lambda}_s(t) from the normalized Jacobi value: C^{lambda}_s(1) = (2 lambda)_s / s!.
double gegenbauer_c(double lambda, int s, double t) {
  const double log_peak = special::log_rising(2.0 * lambda, s) - special::log_gamma(s + 1.0);
  return eval_normalized(PolyFamily::gegenbauer(lambda), s, t) * std::exp(log_peak);
}

}  // namespace

CheckRun check_monotone_lemmas(IntRange n_range, IntRange s_range, int grid, bool emit_cases) {
  if (n_range.lo < 6) throw DomainError("monotonicity checks need n >= 6");
  if (grid < 2) throw DomainError("grid needs at least two points");
  CheckRun run;
  Tracker square;
  Tracker plain;
  int skipped = 0;
  for (int n : values(n_range)) {
    const PolyFamily family = PolyFamily::sphere(n);
    for (int s : values(s_range)) {
      const double xs = s == 0 ? 0.0 : max_root(family, s);
      const double lo = xs + 2.0 / std::sqrt(static_cast<double>(n));
      if (lo >= 1.0) {
        ++skipped;
        continue;
      }
      const double m2 = decrease_margin(
          [&](double t) {
            const double p = eval_normalized(family, s, t);
            return weight(n, t) * p * p;
          },
          lo, grid);
      const double m1 = decrease_margin(
          [&](double t) { return weight(n, t) * eval_normalized(family, s, t); }, lo, grid);
      const ParamPoint at{{"n", n}, {"s", s}};
      square.add(m2, at);
      plain.add(m1, at);
      if (emit_cases) {
        run.records.push_back(
            case_record("monotone_weighted_square", at, m2 >= -kMonotoneTol, m2));
        run.records.push_back(case_record("monotone_weighted", at, m1 >= -kMonotoneTol, m1));
      }
    }
  }
  const std::vector<ParamRange> ranges{range_of("n", n_range), range_of("s", s_range),
                                       {"grid", static_cast<double>(grid),
                                        static_cast<double>(grid)}};
  for (auto [id, tracker] : {std::pair{"monotone_weighted_square", &square},
                             std::pair{"monotone_weighted", &plain}}) {
    CheckReport r = summary(id, ranges, *tracker, -kMonotoneTol);
    r.skipped = skipped;
    run.records.push_back(std::move(r));
  }
  return run;
}

CheckRun check_tail_sum(const TailSumOptions& options, bool emit_cases) {
  if (options.n.lo < 7) throw DomainError("tail sum check needs n >= 7");
  if (options.r.lo < 1) throw DomainError("tail sum check needs r >= 1");
  const int S = options.truncation;
  if (S < options.r.hi) throw DomainError("truncation must be at least the largest r");
  CheckRun run;
  Tracker bounded;
  Tracker decreasing;
  Tracker ratio;
  double sup_upper = 0.0;
  ParamPoint sup_at;
  double sup_lower = 0.0;
  const int top = std::max(S, options.ratio_max_degree) + 1;
  for (int n : values(options.n)) {
    const PolyFamily family = PolyFamily::sphere(n, std::max(kDefaultDegreeCap, top));
    // log a_s = log |P_s| - log P_s(1).
    std::vector<double> la(top + 1);
    for (int s = 0; s <= top; ++s) {
      la[s] = 0.5 * norm_sq(family, s).log_abs() - value_at_one(family, s).log_abs();
    }
    double worst_dec = std::numeric_limits<double>::infinity();
    int worst_dec_s = 0;
    double worst_ratio = 0.0;
    int worst_ratio_s = 0;
    for (int s = 0; s < top; ++s) {
      const double step = la[s + 1] - la[s];
      const double expected =
          0.5 * (std::log((2.0 * s + n - 2) / (2.0 * s + n)) + std::log((s + 1.0) / (s + n - 2.0)));
      const double resid = std::fabs(step - expected);
      if (resid > worst_ratio) {
        worst_ratio = resid;
        worst_ratio_s = s;
      }
      if (s < options.ratio_max_degree && -step < worst_dec) {
        worst_dec = -step;
        worst_dec_s = s;
      }
    }
    decreasing.add(worst_dec, {{"n", n}, {"s", worst_dec_s}});
    ratio.add(1e-9 - worst_ratio, {{"n", n}, {"s", worst_ratio_s}});

    // Tail beyond S: a_{S+t}/a_S <= ((S+n-3)/(S+n-3+t))^{(n-3)/2}, whose sum
    // over t >= 1 is at most (S+n-3)/((n-5)/2).
    const double tail_factor = (S + n - 3.0) / (0.5 * (n - 5));
    for (int r : values(options.r)) {
      double partial = 0.0;
      for (int s = S; s >= r; --s) partial += std::exp(la[s] - la[r]);
      const double lower = partial / r;
      const double upper = (partial + std::exp(la[S] - la[r]) * tail_factor) / r;
      const ParamPoint at{{"n", n}, {"r", r}};
      bounded.add(std::isfinite(upper) ? 1.0 : -1.0, at);
      if (upper > sup_upper) {
        sup_upper = upper;
        sup_at = at;
      }
      sup_lower = std::max(sup_lower, lower);
      if (emit_cases) {
        CheckReport c = case_record("tail_sum", at, std::isfinite(upper), upper - lower);
        c.constant = upper;
        c.constant_name = "C_upper";
        c.metrics = {{"C_lower", lower}, {"C_upper", upper}, {"S", S}};
        run.records.push_back(std::move(c));
      }
    }
  }
  const std::vector<ParamRange> ranges{range_of("n", options.n), range_of("r", options.r),
                                       {"S", static_cast<double>(S), static_cast<double>(S)}};
  CheckReport tail = summary("tail_sum", ranges, bounded, 0.0);
  tail.constant = sup_upper;
  tail.constant_name = "sup_C_upper";
  tail.worst_case = sup_at;
  tail.metrics = {{"sup_C_lower", sup_lower}, {"sup_C_upper", sup_upper}};
  tail.findings.push_back(
      "the tail beyond S is bracketed by a rigorous bound instead of being made negligible");
  run.records.push_back(std::move(tail));
  run.records.push_back(summary("ratio_decreasing",
                                {range_of("n", options.n),
                                 {"s", 0.0, static_cast<double>(options.ratio_max_degree)}},
                                decreasing, std::numeric_limits<double>::min()));
  run.records.push_back(summary("ratio_step_formula",
                                {range_of("n", options.n), {"s", 0.0, static_cast<double>(top - 1)}},
                                ratio, 0.0));
  return run;
}

CheckRun check_nem_constant(const NemOptions& options, bool emit_cases) {
  if (options.n.lo < 3) throw DomainError("envelope check needs n >= 3");
  if (options.degrees.empty()) throw DomainError("envelope check needs degrees");
  CheckRun run;
  Tracker stability;
  double sup_constant = 0.0;
  ParamPoint sup_at;
  bool finite = true;
  for (int n : values(options.n)) {
    const PolyFamily family = PolyFamily::sphere(n);
    std::vector<std::pair<int, double>> per_degree;
    for (int s : options.degrees) {
      const double exponent = 0.25 * (n - 2);
      auto h = [&](double x) {
        const double env = std::pow(std::max(0.0, 1.0 - x * x), exponent);
        return std::fabs(eval_normalized(family, s, x)) * env;
      };
      const auto peaks = scan_maxima(h, 0.0, 1.0, options.scan_points, options.refine);
      const double log_scale = value_at_one(family, s).log_abs() -
                               0.5 * norm_sq(family, s).log_abs() -
                               0.5 * std::log(static_cast<double>(n));
      const double constant = peaks.front().value * std::exp(log_scale);
      const ParamPoint at{{"n", n}, {"s", s}};
      finite = finite && std::isfinite(constant) && constant > 0.0;
      if (constant > sup_constant) {
        sup_constant = constant;
        sup_at = at;
      }
      per_degree.emplace_back(s, constant);
      if (emit_cases) {
        CheckReport c = case_record("nem_constant", at, std::isfinite(constant), constant);
        c.constant = constant;
        c.constant_name = "C_emp";
        c.metrics = {{"argmax_x", peaks.front().t}};
        run.records.push_back(std::move(c));
      }
    }
    for (std::size_t i = 0; i + 1 < per_degree.size(); ++i) {
      const auto [s0, c0] = per_degree[i];
      const auto [s1, c1] = per_degree[i + 1];
      if (s0 < 8 || s1 != 2 * s0) continue;
      stability.add(options.stability - std::fabs(c1 / c0 - 1.0),
                    {{"n", n}, {"s", s0}, {"ratio", c1 / c0}});
    }
  }
  const std::vector<ParamRange> ranges{range_of("n", options.n),
                                       range_of("s", options.degrees)};
  CheckReport sup = summary("nem_constant", ranges, Tracker{}, 0.0);
  sup.cases = static_cast<int>(values(options.n).size() * options.degrees.size());
  sup.holds = finite;
  sup.constant = sup_constant;
  sup.constant_name = "sup_C_emp";
  sup.worst_case = sup_at;
  sup.worst_margin = sup_constant;
  run.records.push_back(std::move(sup));
  CheckReport stable = summary("nem_constant_stability", ranges, stability, 0.0);
  stable.metrics = {{"tolerance", options.stability}};
  run.records.push_back(std::move(stable));
  return run;
}

CheckRun check_design_monotone(const DesignMonotoneOptions& options, bool emit_cases) {
  if (options.n.lo < 6) throw DomainError("design monotonicity check needs n >= 6");
  std::vector<double> t_grid = options.t_grid;
  if (t_grid.empty()) {
    for (int i = 1; i <= 19; ++i) t_grid.push_back(0.05 * i);
    t_grid.push_back(0.99);
  }
  CheckRun run;

  // b_{s+2} >= b_s where the root condition holds.
  Tracker monotone;
  int not_applicable = 0;
  for (int n : values(options.n)) {
    const PolyFamily family = PolyFamily::sphere(n);
    const PolyFamily shifted = PolyFamily::raw(0.5 * (n - 5));
    for (int s : values(options.s)) {
      if (s % 2 != 0) continue;
      const double root = max_root(shifted, s + 2);
      // log(P_s(1)^2/|P_s|^2); b_s = P_s(t)/P_s(1) times this.
      auto log_peak = [&](int d) {
        return 2.0 * value_at_one(family, d).log_abs() - norm_sq(family, d).log_abs();
      };
      const double lp0 = log_peak(s);
      const double lp2 = log_peak(s + 2);
      for (double t : t_grid) {
        if (root > t) {
          ++not_applicable;
          continue;
        }
        const double b0 = eval_normalized(family, s, t) * std::exp(lp0);
        const double b2 = eval_normalized(family, s + 2, t) * std::exp(lp2);
        const double margin = (b2 - b0) / std::max(std::fabs(b0), std::fabs(b2));
        const ParamPoint at{{"n", n}, {"s", s}, {"t", t}};
        monotone.add(margin, at);
        if (emit_cases) {
          CheckReport c = case_record("design_monotone", at, margin >= -kMonotoneTol, margin);
          c.metrics = {{"b_s", b0}, {"b_s_plus_2", b2}, {"root", root}};
          run.records.push_back(std::move(c));
        }
      }
    }
  }
  CheckReport mono = summary("design_monotone",
                             {range_of("n", options.n), range_of("s", options.s),
                              range_of("t", t_grid)},
                             monotone, -kMonotoneTol);
  mono.skipped = not_applicable;
  run.records.push_back(std::move(mono));

  // Gegenbauer step identity with lambda = (n-4)/2, checked with the
  // coefficient s + 2 + lambda = s + n/2; the variant s + (n-2)/2 is
  // evaluated alongside and reported.
  Tracker identity;
  double printed_worst = 0.0;
  ParamPoint printed_at;
  for (int n : values(options.n)) {
    const double lambda = 0.5 * (n - 4);
    for (int s : values(options.s)) {
      for (int i = 0; i < options.identity_points; ++i) {
        const double t = options.identity_points == 1
                             ? 0.0
                             : -1.0 + 2.0 * i / (options.identity_points - 1);
        const double hi2 = gegenbauer_c(lambda + 1.0, s + 2, t);
        const double hi0 = gegenbauer_c(lambda + 1.0, s, t);
        const double lo2 = gegenbauer_c(lambda, s + 2, t);
        const double lhs = lambda * (hi2 - hi0);
        const double rhs = (s + 2 + lambda) * lo2;
        const double scale = std::max({lambda * std::fabs(hi2), lambda * std::fabs(hi0),
                                       std::fabs(rhs)});
        const double resid = scale > 0.0 ? std::fabs(lhs - rhs) / scale : 0.0;
        const double printed_rhs = (s + 0.5 * (n - 2)) * lo2;
        const double printed = scale > 0.0 ? std::fabs(lhs - printed_rhs) / scale : 0.0;
        const ParamPoint at{{"n", n}, {"s", s}, {"t", t}};
        identity.add(1e-9 - resid, at);
        if (printed > printed_worst) {
          printed_worst = printed;
          printed_at = at;
        }
      }
    }
  }
  CheckReport ident =
      summary("gegenbauer_identity",
              {range_of("n", options.n), range_of("s", options.s), {"t", -1.0, 1.0}}, identity,
              0.0);
  ident.metrics = {{"max_relative_residual", 1e-9 - identity.margin},
                   {"alt_coefficient_max_relative_residual", printed_worst}};
  if (printed_worst > 1e-9) {
    std::ostringstream msg;
    msg << "with coefficient s + (n-2)/2 the identity fails (relative residual up to "
        << printed_worst << "); it holds with s + n/2";
    ident.findings.push_back(msg.str());
  }
  run.records.push_back(std::move(ident));

  // Largest Gegenbauer zero strictly decreases in lambda.
  Tracker markov;
  const int degrees[] = {2, 3, 4, 6, 8, 12, 16, 24, 32, 48};
  const std::pair<double, double> pairs[] = {{0.5, 1.0}, {1.0, 2.0}, {2.0, 3.0}, {3.0, 5.0},
                                             {5.0, 8.0}};
  int done = 0;
  for (int s : degrees) {
    for (auto [beta, lambda] : pairs) {
      if (done >= options.markov_pairs) break;
      ++done;
      const double r_beta = max_root(PolyFamily::gegenbauer(beta), s);
      const double r_lambda = max_root(PolyFamily::gegenbauer(lambda), s);
      const ParamPoint at{{"s", s}, {"beta", beta}, {"lambda", lambda}};
      markov.add(r_beta - r_lambda, at);
      if (emit_cases) {
        CheckReport c = case_record("markov_ordering", at, r_lambda < r_beta, r_beta - r_lambda);
        c.metrics = {{"root_beta", r_beta}, {"root_lambda", r_lambda}};
        run.records.push_back(std::move(c));
      }
    }
  }
  CheckReport mk = summary("markov_ordering", {{"s", 2.0, 48.0}, {"lambda", 0.5, 8.0}}, markov,
                           std::numeric_limits<double>::min());
  run.records.push_back(std::move(mk));
  return run;
}

CheckRun check_root_estimates(IntRange n_range, IntRange s_range, bool emit_cases) {
  if (n_range.lo < 4) throw DomainError("root estimates need n >= 4");
  if (s_range.lo < 1) throw DomainError("root estimates need s >= 1");
  CheckRun run;
  Tracker center;
  Tracker gap;
  std::vector<std::string> failures;
  for (int n : values(n_range)) {
    const PolyFamily family = PolyFamily::sphere(n);
    std::vector<int> failing;
    for (int s : values(s_range)) {
      const double x = max_root(family, s);
      const double mid = std::sqrt(4.0 * s * (s + n)) / (2.0 * s + n);
      const double m5 = std::sqrt(2.0 / n) - std::fabs(x - mid);
      const ParamPoint at{{"n", n}, {"s", s}};
      center.add(m5, at);
      if (m5 < 0.0) failing.push_back(s);
      CheckReport c5 = case_record("root_center_estimate", at, m5 >= 0.0, m5);
      c5.asserted = false;
      c5.metrics = {{"x_s", x}, {"center", mid}};
      if (emit_cases) run.records.push_back(std::move(c5));
      if (s > 1) {
        const double lower = std::pow((n - 4.0) / (2.0 * s + n - 4), 2);
        const double m6 = (1.0 - x * x) - lower;
        gap.add(m6, at);
        if (emit_cases) run.records.push_back(case_record("root_gap_bound", at, m6 >= 0.0, m6));
      }
    }
    if (!failing.empty()) {
      std::ostringstream msg;
      msg << "n=" << n << ": center estimate fails for s in {";
      for (std::size_t i = 0; i < failing.size(); ++i) msg << (i ? "," : "") << failing[i];
      msg << "}";
      failures.push_back(msg.str());
    }
  }
  const std::vector<ParamRange> ranges{range_of("n", n_range), range_of("s", s_range)};
  CheckReport r5 = summary("root_center_estimate", ranges, center, 0.0);
  r5.asserted = false;
  r5.findings = failures;
  run.records.push_back(std::move(r5));
  run.records.push_back(summary("root_gap_bound", ranges, gap, 0.0));
  return run;
}

CheckRun sandwich_codes(const SandwichCodeOptions& options, bool emit_cases) {
  if (options.n.lo < 7) throw DomainError("code sandwich needs n >= 7");
  if (options.theta_degrees.empty()) throw DomainError("code sandwich needs angles");
  std::vector<Problem> problems;
  for (int n : values(options.n)) {
    for (double deg : options.theta_degrees) {
      problems.push_back(CodeProblem{n, deg * std::numbers::pi / 180.0, options.solve.m_max});
    }
  }
  SolveOptions solve = options.solve;
  solve.auto_degree = true;
  const auto results = bound_sweep(problems, solve);

  CheckRun run;
  Tracker lower;
  Tracker exponent;
  Tracker trend;
  int inadmissible = 0;
  int failed = 0;
  std::vector<std::string> findings;
  double c_slack = 0.0;
  // gap[theta index][n index]
  const auto ns = values(options.n);
  std::vector<std::vector<double>> gaps(options.theta_degrees.size(),
                                        std::vector<double>(ns.size(), 0.0));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    for (std::size_t j = 0; j < options.theta_degrees.size(); ++j, ++idx) {
      const int n = ns[i];
      const double deg = options.theta_degrees[j];
      const double theta = deg * std::numbers::pi / 180.0;
      const ParamPoint at{{"n", n}, {"theta_deg", deg}};
      const auto& res = results[idx];
      if (!res.bracket) {
        ++failed;
        findings.push_back("n=" + std::to_string(n) + " theta=" + std::to_string(deg) +
                           ": " + res.error);
        exponent.add(-1.0, at);
        continue;
      }
      const LPBracket& b = *res.bracket;
      const double gap = std::log2(b.certified_value) / n - kl_exponent(theta);
      gaps[j][i] = gap;
      exponent.add(gap, at);
      c_slack = std::max(c_slack, gap * std::sqrt(static_cast<double>(n)));
      CheckReport c = case_record("sandwich_codes", at, gap > 0.0, gap);
      c.metrics = {{"relaxed_value", b.relaxed_value},
                   {"certified_value", b.certified_value},
                   {"m_used", b.m_used},
                   {"exponent_gap", gap},
                   {"kl_exponent", kl_exponent(theta)},
                   {"cor13_exponent", cor13_exponent(theta)}};
      try {
        const Prop1Result p = prop1_expression(n, theta);
        const double ratio = (LogReal(b.relaxed_value) / p.log_expression).to_double();
        lower.add(ratio, at);
        c.constant = ratio;
        c.constant_name = "c_low";
        c.metrics.push_back({"prop1_r", p.r});
        c.metrics.push_back({"prop1_log10", p.log_expression.log10_abs()});
        c.metrics.push_back({"prop1_alt_log10", p.log_expression_alt.log10_abs()});
      } catch (const DomainError&) {
        ++inadmissible;
      }
      if (emit_cases) run.records.push_back(std::move(c));
    }
  }
  for (std::size_t j = 0; j < options.theta_degrees.size(); ++j) {
    for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
      trend.add(gaps[j][i] - gaps[j][i + 1],
                {{"n", ns[i]}, {"theta_deg", options.theta_degrees[j]}});
    }
  }
  const std::vector<ParamRange> ranges{range_of("n", options.n),
                                       range_of("theta_deg", options.theta_degrees)};
  CheckReport low = summary("sandwich_codes_lower", ranges, lower,
                            std::numeric_limits<double>::min());
  low.constant = lower.cases > 0 ? lower.margin : 0.0;
  low.constant_name = "c_low";
  low.skipped = inadmissible + failed;
  if (inadmissible > 0) {
    low.findings.push_back(std::to_string(inadmissible) +
                           " sweep points have cos(theta) < 2/sqrt(n): no admissible threshold "
                           "degree, expression undefined");
  }
  run.records.push_back(std::move(low));
  CheckReport expo = summary("sandwich_codes_exponent", ranges, exponent,
                             std::numeric_limits<double>::min());
  expo.constant = c_slack;
  expo.constant_name = "c_slack";
  expo.findings = findings;
  run.records.push_back(std::move(expo));
  CheckReport tr = summary("sandwich_codes_exponent_decreasing", ranges, trend,
                           std::numeric_limits<double>::min());
  run.records.push_back(std::move(tr));
  return run;
}

CheckRun sandwich_designs(const SandwichDesignOptions& options, bool emit_cases) {
  if (options.n.empty() || options.k.empty()) throw DomainError("design sandwich needs n and k");
  for (int n : options.n) {
    if (n < 6) throw DomainError("design sandwich needs n >= 6");
  }
  SolveOptions solve = options.solve;
  solve.auto_degree = true;
  int m_max = solve.m_max;
  for (int k : options.k) m_max = std::max(m_max, k);
  std::vector<Problem> problems;
  for (int n : options.n) {
    for (int k : options.k) problems.push_back(DesignProblem{n, k, m_max, options.convention});
  }
  const auto results = bound_sweep(problems, solve);

  CheckRun run;
  Tracker yudin;
  Tracker slope;
  double sup_c_over_k = 0.0;
  ParamPoint sup_at;
  bool all_finite = true;
  std::vector<std::string> findings;
  ParamPoint slopes;
  std::size_t idx = 0;
  for (int n : options.n) {
    std::vector<double> ks;
    std::vector<double> vals;
    for (int k : options.k) {
      const auto& res = results[idx++];
      const ParamPoint at{{"n", n}, {"k", k}};
      if (!res.bracket) {
        findings.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " +
                           res.error);
        yudin.add(-1.0, at);
        all_finite = false;
        continue;
      }
      const LPBracket& b = *res.bracket;
      ks.push_back(k);
      vals.push_back(b.certified_value);
      CheckReport c = case_record("sandwich_designs", at, true, 0.0);
      c.metrics = {{"relaxed_value", b.relaxed_value},
                   {"certified_value", b.certified_value},
                   {"m_used", b.m_used}};
      if (k >= 2) {
        const double y = yudin_value(n, k);
        const double margin = b.certified_value / (0.99 * y) - 1.0;
        yudin.add(margin, at);
        c.holds = margin >= 0.0;
        c.worst_margin = margin;
        c.metrics.push_back({"yudin_value", y});
      }
      const Prop2Result p = prop2_expression(n, k);
      const double c_emp = (LogReal(b.certified_value) / p.log_expression).to_double();
      all_finite = all_finite && std::isfinite(c_emp);
      if (c_emp / k > sup_c_over_k) {
        sup_c_over_k = c_emp / k;
        sup_at = at;
      }
      c.constant = c_emp;
      c.constant_name = "C_emp";
      c.metrics.push_back({"C_emp_over_k", c_emp / k});
      c.metrics.push_back({"prop2_log10", p.log_expression.log10_abs()});
      c.metrics.push_back({"yudin_asymptotic_log10", yudin_asymptotic(n, k).log10_abs()});
      c.metrics.push_back({"cor14_log10", cor14_value(n, k).log10_abs()});
      if (emit_cases) run.records.push_back(std::move(c));
    }
    if (ks.size() >= 2) {
      const double fitted = loglog_slope(ks, vals);
      slopes.push_back({"slope_n" + std::to_string(n), fitted});
      slope.add(options.slope_tolerance - std::fabs(fitted - (n - 1)),
                {{"n", n}, {"slope", fitted}, {"target", n - 1}});
    } else {
      slope.add(-1.0, {{"n", n}});
    }
  }
  const std::vector<ParamRange> ranges{range_of("n", options.n), range_of("k", options.k)};
  CheckReport y = summary("sandwich_designs_yudin", ranges, yudin, 0.0);
  y.findings = findings;
  y.metrics = {{"convention_shifted", options.convention == Convention::shifted ? 1.0 : 0.0}};
  run.records.push_back(std::move(y));
  CheckReport up = summary("sandwich_designs_upper", ranges, Tracker{}, 0.0);
  up.cases = static_cast<int>(options.n.size() * options.k.size());
  up.holds = all_finite;
  up.constant = sup_c_over_k;
  up.constant_name = "sup_C_emp_over_k";
  up.worst_case = sup_at;
  up.worst_margin = sup_c_over_k;
  run.records.push_back(std::move(up));
  CheckReport sl = summary("sandwich_designs_slope", ranges, slope, 0.0);
  sl.metrics = slopes;
  sl.metrics.push_back({"tolerance", options.slope_tolerance});
  run.records.push_back(std::move(sl));
  return run;
}

}  // namespace delsarte
