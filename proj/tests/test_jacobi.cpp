#include <doctest.h>

#include <cmath>
#include <numbers>

#include "delsarte/errors.hpp"
#include "delsarte/jacobi.hpp"
#include "delsarte/log_real.hpp"
#include "delsarte/special.hpp"
#include "oracles.hpp"

using namespace delsarte;
using namespace delsarte::special;

TEST_CASE("log_gamma and log_rising match direct evaluation") {
  for (double x : {0.5, 1.0, 2.5, 7.0, 33.25, 170.5, 1000.0}) {
    CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  }
  for (double x : {0.5, 1.0, 2.0, 14.5}) {
    for (int s : {0, 1, 5, 40, 200}) {
      CHECK(log_rising(x, s) == doctest::Approx(oracle::log_rising(x, s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("incomplete_beta closed forms") {
  for (double x : {0.0, 0.1, 0.5, 0.93, 1.0}) {
    CHECK(incomplete_beta(3.0, 1.0, x) == doctest::Approx(std::pow(x, 3.0)).epsilon(1e-13));
    CHECK(incomplete_beta(1.0, 2.5, x) == doctest::Approx(1.0 - std::pow(1.0 - x, 2.5)).epsilon(1e-13));
  }
  for (double a : {0.5, 2.0, 7.5, 40.0}) {
    CHECK(incomplete_beta(a, a, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("LogReal arithmetic") {
  const LogReal a(3.0);
  const LogReal b(-5.0);
  CHECK((a * b).to_double() == doctest::Approx(-15.0));
  CHECK((a / b).to_double() == doctest::Approx(-0.6));
  CHECK((a + b).to_double() == doctest::Approx(-2.0));
  CHECK((a - a).is_zero());
  CHECK(LogReal(0.0).is_zero());
  CHECK((LogReal(4.0).sqrt()).to_double() == doctest::Approx(2.0));
  const LogReal huge = LogReal::from_log(5000.0);
  CHECK((huge * huge).log_abs() == doctest::Approx(10000.0));
  CHECK((huge + huge).log_abs() == doctest::Approx(5000.0 + std::log(2.0)).epsilon(1e-15));
  CHECK(std::isinf(huge.to_double()));
}

TEST_CASE("eval_p examples") {
  const auto f9 = PolyFamily::sphere(9);
  CHECK(eval_p(f9, 0, 0.37) == 1.0);
  CHECK(eval_p(PolyFamily::sphere(7), 1, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(eval_p(PolyFamily::sphere(5), 2, 1.0) == doctest::Approx(6.0).epsilon(1e-14));
  const auto f6 = PolyFamily::sphere(6);
  CHECK(eval_p(f6, 3, -0.4) == doctest::Approx(-eval_p(f6, 3, 0.4)).epsilon(1e-14));
  CHECK_THROWS_AS(eval_p(f6, 3, 1.5), DomainError);
  CHECK_THROWS_AS(eval_p(f6, kDefaultDegreeCap + 1, 0.5), DegreeLimitError);
  CHECK_THROWS_AS(eval_p(PolyFamily::sphere(6, 10), 11, 0.5), DegreeLimitError);
}

TEST_CASE("eval_p agrees with the explicit sum") {
  for (int n : {3, 4, 6, 9, 16}) {
    const auto f = PolyFamily::sphere(n);
    for (int s = 0; s <= 14; ++s) {
      for (double t : {-0.97, -0.5, 0.0, 0.31, 0.8, 1.0}) {
        const double expected = oracle::explicit_p(f.alpha(), s, t);
        CHECK(eval_p(f, s, t) == doctest::Approx(expected).epsilon(1e-10).scale(value_at_one(f, s).to_double()));
      }
    }
  }
}

TEST_CASE("normalized evaluation agrees with the Gegenbauer recurrence") {
  for (double alpha : {-0.5, 0.0, 0.5, 2.0, 6.5, 14.5}) {
    const auto f = PolyFamily::raw(alpha);
    for (double t : {-1.0, -0.73, -0.1, 0.0, 0.42, 0.99, 1.0}) {
      const auto expected = oracle::normalized_upto(alpha, 300, t);
      std::vector<double> got(301);
      eval_normalized_upto(f, t, got);
      for (int s : {0, 1, 2, 7, 50, 151, 300}) {
        CHECK(got[s] == doctest::Approx(expected[s]).epsilon(1e-10).scale(1.0));
        CHECK(eval_normalized(f, s, t) == doctest::Approx(expected[s]).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("NormalizedBasis matches eval_normalized") {
  const auto f = PolyFamily::sphere(11);
  NormalizedBasis basis(f, 64);
  std::vector<double> out(65);
  std::vector<double> coeffs(65);
  for (int s = 0; s <= 64; ++s) coeffs[s] = 1.0 / (s + 1.0);
  for (double t : {-0.9, 0.0, 0.3, 0.99}) {
    basis.eval(t, out);
    double sum = 0.0;
    for (int s = 0; s <= 64; ++s) {
      CHECK(out[s] == doctest::Approx(eval_normalized(f, s, t)).epsilon(1e-13).scale(1.0));
      sum += coeffs[s] * out[s];
    }
    CHECK(basis.sum(coeffs, t) == doctest::Approx(sum).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("value_at_one is the rising factorial") {
  CHECK(value_at_one(PolyFamily::sphere(7), 1).to_double() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(value_at_one(PolyFamily::sphere(5), 3).to_double() == doctest::Approx(24.0).epsilon(1e-14));
  for (int n = 3; n <= 32; ++n) {
    CHECK(value_at_one(PolyFamily::sphere(n), 0).to_double() == 1.0);
    CHECK(value_at_one(PolyFamily::sphere(n), 0).sign() == 1);
  }
}

TEST_CASE("norm_sq examples") {
  CHECK(norm_sq(PolyFamily::sphere(5), 0).to_double() == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
  CHECK(norm_sq(PolyFamily::sphere(5), 1).to_double() == doctest::Approx(16.0 / 15.0).epsilon(1e-13));
  CHECK(norm_sq(PolyFamily::sphere(4), 0).to_double() ==
        doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-13));
}

TEST_CASE("orthogonality under the library's Gauss rule") {
  for (int n : {4, 7, 12}) {
    const auto f = PolyFamily::sphere(n);
    const QuadratureRule q = gauss_rule(f, 64);
    for (int i = 0; i <= 60; i += 6) {
      for (int j = i + 1; j <= 60; j += 7) {
        const double v = q.integrate([&](double t) { return eval_normalized(f, i, t) * eval_normalized(f, j, t); });
        const double scale = std::sqrt((norm_sq(f, i) / (value_at_one(f, i) * value_at_one(f, i))).to_double() *
                                       (norm_sq(f, j) / (value_at_one(f, j) * value_at_one(f, j))).to_double());
        CHECK(std::fabs(v) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("gauss_rule invariants") {
  const auto f5 = PolyFamily::sphere(5);
  const QuadratureRule one = gauss_rule(f5, 1);
  REQUIRE(one.nodes.size() == 1);
  CHECK(one.nodes[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(one.weights[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-13));

  for (double alpha : {0.0, 1.0, 2.5, 7.0}) {
    const auto f = PolyFamily::raw(alpha);
    for (int q : {2, 8, 20}) {
      const QuadratureRule r = gauss_rule(f, q);
      double sum = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        CHECK(r.weights[i] > 0.0);
        if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
        CHECK(r.nodes[i] == doctest::Approx(-r.nodes[r.nodes.size() - 1 - i]).scale(1.0));
        sum += r.weights[i];
      }
      CHECK(sum == doctest::Approx(oracle::total_mass(alpha)).epsilon(1e-12));
      for (int j = 0; 2 * j <= 2 * q - 1; ++j) {
        const double moment = std::exp(std::lgamma(j + 0.5) + std::lgamma(alpha + 1.0) -
                                       std::lgamma(j + alpha + 1.5));
        CHECK(r.integrate([&](double t) { return std::pow(t, 2 * j); }) ==
              doctest::Approx(moment).epsilon(1e-10));
      }
    }
  }
  const QuadratureRule r7 = gauss_rule(PolyFamily::sphere(7), 6);
  CHECK(r7.integrate([](double t) { return t * t; }) ==
        doctest::Approx(oracle::total_mass(2.0) / 7.0).epsilon(1e-12));
}

TEST_CASE("weight and weight_integral") {
  CHECK(weight(9, 0.0) == 1.0);
  CHECK(weight(5, 0.5) == doctest::Approx(0.75));
  CHECK(weight(5, 1.0) == 0.0);
  CHECK(weight(5, -1.0) == 0.0);
  CHECK_THROWS_AS(weight(5, 1.1), DomainError);
  CHECK(weight_integral(5, -1.0, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(weight_integral(9, 0.0, 1.0) == doctest::Approx(0.5 * weight_integral(9, -1.0, 1.0)).epsilon(1e-12));
  CHECK(weight_integral(6, 0.3, 0.3) == 0.0);
  CHECK_THROWS_AS(weight_integral(6, 0.5, 0.2), DomainError);
  const auto g = oracle::gauss_legendre(120);
  for (int n : {3, 4, 7, 10}) {
    for (double a : {-0.8, 0.0, 0.55}) {
      const double alpha = (n - 3) / 2.0;
      const double top = std::acos(a);
      double expected = 0.0;
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double phi = top * (g.x[i] + 1.0) / 2.0;
        expected += g.w[i] * std::pow(std::sin(phi), 2.0 * alpha + 1.0);
      }
      expected *= top / 2.0;
      CHECK(weight_integral(n, a, 1.0) == doctest::Approx(expected).epsilon(1e-11));
    }
  }
}

TEST_CASE("max_root closed forms and bracketing") {
  for (int n : {9, 16, 25, 36}) {
    CHECK(max_root(PolyFamily::sphere(n), 2) == doctest::Approx(1.0 / std::sqrt(n)).epsilon(1e-12));
  }
  CHECK(max_root(PolyFamily::sphere(25), 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(max_root(PolyFamily::raw(2.7), 1) == doctest::Approx(0.0).scale(1.0));
  for (int n : {6, 11, 30}) {
    const auto f = PolyFamily::sphere(n);
    double previous = -1.0;
    for (int s = 1; s <= 80; ++s) {
      const double x = max_root(f, s);
      CHECK(x > previous);
      CHECK(x < 1.0);
      const double below = oracle::normalized(f.alpha(), s, x - 1e-9);
      const double above = oracle::normalized(f.alpha(), s, x + 1e-9);
      CHECK(below * above <= 0.0);
      previous = x;
    }
  }
}

TEST_CASE("roots are symmetric and interlace") {
  const auto f = PolyFamily::sphere(8);
  for (int s = 2; s <= 30; ++s) {
    const auto r = roots(f, s);
    const auto next = roots(f, s + 1);
    REQUIRE(static_cast<int>(r.size()) == s);
    for (int i = 0; i < s; ++i) {
      CHECK(r[i] == doctest::Approx(-r[s - 1 - i]).scale(1.0));
      CHECK(next[i] < r[i]);
      CHECK(r[i] < next[i + 1]);
      CHECK(std::fabs(oracle::normalized(f.alpha(), s, r[i])) < 1e-9);
    }
  }
}
