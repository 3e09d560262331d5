#include <doctest.h>

#include <cmath>

#include "delsarte/lemmas.hpp"

using namespace delsarte;

namespace {

const CheckReport& summary(const CheckRun& run, const std::string& id) {
  const CheckReport* r = run.find(id);
  REQUIRE(r != nullptr);
  return *r;
}

}  // namespace

TEST_CASE("loglog_slope recovers a power law") {
  const std::vector<double> x{4, 8, 16, 32};
  std::vector<double> y;
  for (double v : x) y.push_back(3.5 * std::pow(v, 5.0));
  CHECK(loglog_slope(x, y) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("monotone lemmas on small cases") {
  const CheckRun run = check_monotone_lemmas({6, 9}, {0, 3}, 10000);
  CHECK(summary(run, "monotone_weighted_square").holds);
  CHECK(summary(run, "monotone_weighted").holds);
  const CheckRun single = check_monotone_lemmas({20, 20}, {3, 3}, 10000);
  CHECK(single.passed());
  const CheckRun vacuous = check_monotone_lemmas({7, 7}, {3, 3}, 10000);
  CHECK(summary(vacuous, "monotone_weighted").skipped == 1);
  CHECK(summary(vacuous, "monotone_weighted").cases == 0);
  CHECK_FALSE(vacuous.passed());
  const CheckRun base = check_monotone_lemmas({6, 6}, {0, 0}, 10000);
  CHECK(base.passed());
  CHECK(summary(base, "monotone_weighted").cases == 1);
  const CheckRun skipped = check_monotone_lemmas({6, 6}, {40, 40}, 100);
  CHECK(summary(skipped, "monotone_weighted").skipped == 1);
}

TEST_CASE("tail sums and the step ratio") {
  const CheckRun run = check_tail_sum(TailSumOptions{{7, 8}, {1, 10}, 2000, 500});
  CHECK(run.passed());
  const CheckReport& tail = summary(run, "tail_sum");
  REQUIRE(tail.constant);
  CHECK(std::isfinite(*tail.constant));
  CHECK(*tail.constant > 0.0);
  CHECK(summary(run, "ratio_step_formula").holds);
}

TEST_CASE("sup-norm constant is stable") {
  NemOptions o;
  o.n = {8, 8};
  o.degrees = {0, 8, 16, 32};
  o.scan_points = 20000;
  const CheckRun run = check_nem_constant(o);
  CHECK(run.passed());
  CHECK(summary(run, "nem_constant").constant.has_value());
}

TEST_CASE("design monotonicity, identity and root ordering") {
  DesignMonotoneOptions o;
  o.n = {6, 10};
  o.s = {0, 10, 2};
  const CheckRun run = check_design_monotone(o);
  CHECK(summary(run, "design_monotone").holds);
  CHECK(summary(run, "gegenbauer_identity").holds);
  CHECK(summary(run, "markov_ordering").holds);
}

TEST_CASE("root estimates") {
  const CheckRun run = check_root_estimates({6, 32}, {2, 10});
  CHECK(summary(run, "root_gap_bound").holds);
  const CheckReport& center = summary(run, "root_center_estimate");
  CHECK_FALSE(center.asserted);
  CHECK_FALSE(center.holds);
  CHECK_FALSE(center.findings.empty());
  CHECK(run.passed());
}

TEST_CASE("reports are reproducible") {
  const CheckRun a = check_root_estimates({6, 12}, {2, 12});
  const CheckRun b = check_root_estimates({6, 12}, {2, 12});
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].worst_margin == b.records[i].worst_margin);
    CHECK(a.records[i].worst_case == b.records[i].worst_case);
  }
}

TEST_CASE("code sandwich at 50 degrees") {
  SandwichCodeOptions o;
  o.n = {10, 11};
  o.theta_degrees = {50};
  const CheckRun run = sandwich_codes(o);
  CHECK(summary(run, "sandwich_codes_lower").holds);
  CHECK(summary(run, "sandwich_codes_exponent").holds);
}

TEST_CASE("design sandwich Yudin comparison") {
  SandwichDesignOptions o;
  o.n = {7};
  o.k = {4, 6};
  const CheckRun run = sandwich_designs(o);
  CHECK(summary(run, "sandwich_designs_yudin").holds);
  CHECK(summary(run, "sandwich_designs_upper").holds);
}
