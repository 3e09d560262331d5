#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "delsarte/delsarte_lp.hpp"
#include "delsarte/errors.hpp"
#include "oracles.hpp"

using namespace delsarte;

namespace {

/// Largest constraint excess of a certificate on a uniform grid, evaluated
/// with the oracle recurrence.
double oracle_excess(const CoeffVector& f, double lo, double hi, bool code) {
  const int m = f.degree();
  const double alpha = f.family().alpha();
  const auto c = f.normalized();
  double worst = -1e300;
  const int points = 20001;
  for (int i = 0; i < points; ++i) {
    const double t = lo + (hi - lo) * i / (points - 1);
    const auto r = oracle::normalized_upto(alpha, m, t);
    double v = 0.0;
    for (int s = 0; s <= m; ++s) v += c[s] * r[s];
    worst = std::max(worst, code ? v : -v);
  }
  return worst;
}

}  // namespace

TEST_CASE("convention names") {
  CHECK(to_string(Convention::strict) == "strict");
  CHECK(parse_convention("shifted") == Convention::shifted);
  CHECK_THROWS_AS(parse_convention("loose"), DomainError);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS((CodeProblem{2, 1.0, 4}.validate()), DomainError);
  CHECK_THROWS_AS((CodeProblem{5, 0.0, 4}.validate()), DomainError);
  CHECK_THROWS_AS((CodeProblem{5, 1.0, 0}.validate()), DomainError);
  CHECK_THROWS_AS((DesignProblem{6, 0, 4}.validate()), DomainError);
  CHECK_THROWS_AS((DesignProblem{6, 5, 4}.validate()), DomainError);
  CHECK_NOTHROW((DesignProblem{6, 4, 4}.validate()));
  CHECK((CodeProblem{5, std::numbers::pi / 3, 4}.delta()) == doctest::Approx(0.5));
}

TEST_CASE("antipodal codes at 90 degrees") {
  for (int n : {3, 4, 5, 6, 8}) {
    const LPBracket b = code_bound(CodeProblem{n, std::numbers::pi / 2, 2});
    CHECK(b.certified_value == doctest::Approx(2.0 * n).epsilon(1e-6));
    CHECK(b.relaxed_value <= b.certified_value + 1e-12);
    CHECK(oracle_excess(b.certificate, -1.0, 0.0, true) <= 1e-10);
  }
}

TEST_CASE("code bound is non-increasing in m and theta") {
  const double a = code_bound(CodeProblem{5, std::numbers::pi / 2, 2}).certified_value;
  const double b = code_bound(CodeProblem{5, std::numbers::pi / 2, 20}).certified_value;
  CHECK(b <= a + 1e-8);
  double previous = 1e300;
  for (double deg : {40.0, 50.0, 60.0, 75.0, 90.0}) {
    const double v = code_bound(CodeProblem{6, deg * std::numbers::pi / 180.0, 12}).certified_value;
    CHECK(v <= previous + 1e-8);
    previous = v;
  }
}

TEST_CASE("E8 kissing configuration") {
  const LPBracket b = code_bound(CodeProblem{8, std::numbers::pi / 3, 11});
  CHECK(b.certified_value == doctest::Approx(240.0).epsilon(1e-3 / 240.0));
  CHECK(b.relaxed_value <= b.certified_value);
  const VerifyResult v = verify_certificate(CodeProblem{8, std::numbers::pi / 3, 11}, b.certificate);
  CHECK(v.feasible);
  CHECK(v.max_violation <= 1e-10);
  CHECK(oracle_excess(b.certificate, -1.0, 0.5, true) <= 1e-9);
  CHECK(b.certificate.raw_coefficient(0).to_double() == doctest::Approx(1.0));
}

TEST_CASE("design oracles") {
  for (int n = 5; n <= 10; ++n) {
    const LPBracket b = design_bound(DesignProblem{n, 2, 2, Convention::shifted});
    CHECK(b.certified_value >= n + 1 - 1e-5);
    CHECK(b.certified_value <= b.relaxed_value + 1e-8);
    CHECK(oracle_excess(b.certificate, -1.0, 1.0, false) <= 1e-10);
  }
  const LPBracket one = design_bound(DesignProblem{7, 1, 1, Convention::shifted});
  CHECK(one.certified_value >= 2.0 - 1e-9);
}

TEST_CASE("strict convention never exceeds shifted") {
  for (int n : {4, 6, 9}) {
    for (int k : {1, 2, 3, 5}) {
      for (int m : {k, k + 3}) {
        const double strict = design_bound(DesignProblem{n, k, m, Convention::strict}).certified_value;
        const double shifted = design_bound(DesignProblem{n, k, m, Convention::shifted}).certified_value;
        CHECK(strict <= shifted + 1e-8);
      }
    }
  }
}

TEST_CASE("design bound is non-decreasing in m") {
  double previous = 0.0;
  for (int m : {4, 6, 8, 12}) {
    const double v = design_bound(DesignProblem{6, 4, m, Convention::strict}).certified_value;
    CHECK(v >= previous - 1e-8);
    previous = v;
  }
}

TEST_CASE("verify_certificate rejects bad certificates") {
  const auto fam = PolyFamily::sphere(6);
  const CoeffVector p1(fam, {0.0, 1.0});
  CHECK_FALSE(verify_certificate(CodeProblem{6, std::numbers::pi / 2, 1}, p1).feasible);

  const int n = 5;
  const double c = 1.0 / n;
  const double scale = (1.0 + c) * (1.0 + c);
  // (t + 1/n)^2 = t^2 + 2t/n + 1/n^2, with t^2 = 1/n + (1 - 1/n) R_2 for n = 5.
  const CoeffVector square(PolyFamily::sphere(n),
                           {(1.0 / n + c * c) / scale, 2.0 * c / scale, (1.0 - 1.0 / n) / scale});
  CHECK(square(1.0) == doctest::Approx(1.0));
  CHECK_FALSE(verify_certificate(DesignProblem{n, 2, 2, Convention::strict}, square).feasible);
  CHECK(verify_certificate(DesignProblem{n, 2, 2, Convention::shifted}, square).feasible);
  CHECK(1.0 / square.raw_coefficient(0).to_double() == doctest::Approx(n + 1.0));
}

TEST_CASE("coefficient round trip through the raw P_s basis") {
  const auto fam = PolyFamily::sphere(9);
  const CoeffVector f(fam, {1.0, 0.25, -3.0, 0.5});
  std::vector<LogReal> a;
  for (int s = 0; s <= f.degree(); ++s) a.push_back(f.raw_coefficient(s));
  const CoeffVector g = CoeffVector::from_raw(fam, a);
  for (int s = 0; s <= f.degree(); ++s) {
    CHECK(g.normalized()[s] == doctest::Approx(f.normalized()[s]).epsilon(1e-14));
  }
  double direct = 0.0;
  for (int s = 0; s <= f.degree(); ++s) {
    direct += (a[s] * value_at_one(fam, s)).to_double();
  }
  CHECK(f.value_at_one() == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("bound_sweep isolates failures and keeps order") {
  CHECK(bound_sweep({}).empty());
  std::vector<Problem> problems{CodeProblem{3, std::numbers::pi / 2, 2}, CodeProblem{2, 1.0, 2},
                                CodeProblem{4, std::numbers::pi / 2, 2},
                                CodeProblem{3, std::numbers::pi / 2, 2}};
  SolveOptions o;
  o.jobs = 2;
  const auto results = bound_sweep(problems, o);
  REQUIRE(results.size() == 4);
  REQUIRE(results[0].bracket);
  CHECK_FALSE(results[1].bracket);
  CHECK_FALSE(results[1].error.empty());
  CHECK(results[2].bracket->certified_value == doctest::Approx(8.0).epsilon(1e-6));
  CHECK(results[0].bracket->certified_value == results[3].bracket->certified_value);
  CHECK(results[0].bracket->certificate.normalized()[1] == results[3].bracket->certificate.normalized()[1]);
}

TEST_CASE("doubling degree sweep records its trace") {
  SolveOptions o;
  o.m_max = 32;
  const LPBracket b = code_bound_auto(8, std::numbers::pi / 3, o);
  CHECK(b.certified_value == doctest::Approx(240.0).epsilon(1e-5));
  REQUIRE_FALSE(b.trace.empty());
  CHECK(b.trace.front().m == 8);
  CHECK(b.m_used == b.trace.back().m);
  const LPBracket d = design_bound_auto(6, 4, Convention::shifted, o);
  CHECK(d.trace.front().m == 4);
  CHECK(d.certified_value <= d.relaxed_value + 1e-8);
}
