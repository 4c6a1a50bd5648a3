#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dunkl/gegenbauer.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace dunkl;
using doctest::Approx;

namespace {

const double kLambdas[] = {0.5, 1.0, 2.0, 3.5};

// \int t^k (1-t^2)^{lambda-1/2} dt = B((k+1)/2, lambda+1/2) for even k.
double beta_moment(int k, double lambda) {
  if (k % 2) return 0.0;
  double a = (k + 1) / 2.0, b = lambda + 0.5;
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

bool close(double a, double b, double rel, double abs_tol) {
  return std::abs(a - b) <= abs_tol + rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("function grammar") {
  CHECK(parse_function("exp")(0.3) == std::exp(0.3));
  CHECK(parse_function("1")(0.9) == 1.0);
  CHECK(parse_function("poly 0,1")(0.25) == 0.25);
  CHECK(parse_function("poly 1,0,1")(0.5) == 1.25);
  CHECK(parse_function("cos 2")(0.5) == std::cos(1.0));
  CHECK(parse_function("step 0.5")(0.5) == 1.0);
  CHECK(parse_function("step 0.5")(0.49) == 0.0);
  CHECK(parse_function("table -1:0,1:2")(0.0) == Approx(1.0));
  auto s = parse_function("sum 2*exp + -1*poly 0,1");
  CHECK(s(0.2) == Approx(2 * std::exp(0.2) - 0.2));
  auto even = parse_function("even exp");
  CHECK(even(0.7) == Approx(std::cosh(0.7)));
  CHECK(parse_function("odd exp")(0.7) == Approx(std::sinh(0.7)));
  auto gg = parse_function("gegen 2");
  CHECK_FALSE(gg.is_bound());
  CHECK_THROWS(gg(0.1));
  CHECK(gg.with_lambda(1.0)(1.0) == Approx(3.0));
  CHECK(parse_function("sum 1*(sum 1*exp + 1*1) + 2*gegen 1").with_lambda(1.0)(0.0) == Approx(2.0));
  CHECK_THROWS(parse_function("foo"));
  CHECK_THROWS(parse_function("poly"));
  CHECK_THROWS(parse_function("exp extra"));
  CHECK_THROWS(parse_function("table 1:0,-1:1"));

  for (const char* text : {"exp", "poly 1,-0.5,3", "sum 2*exp + -1*(sum 1*cos 3 + 1*step 0)", "odd cos 1.5",
                           "table -1:0,0:1,1:0", "gegen 4", "0.125"}) {
    auto f = parse_function(text);
    CHECK(parse_function(f.describe()).describe() == f.describe());
  }
  CHECK(parse_function("exp").is_smooth());
  CHECK_FALSE(parse_function("sum 1*exp + 1*step 0").is_smooth());
  CHECK(parse_function("sum 1*poly 1,2 + 3*gegen 2").with_lambda(1.0).polynomial_degree() == 2);
  CHECK_FALSE(parse_function("exp").polynomial_degree().has_value());
}

TEST_CASE("Gegenbauer polynomials") {
  CHECK(gegenbauer_eval(0, 2.5, 0.3) == 1.0);
  CHECK(gegenbauer_eval(2, 1.0, 1.0) == Approx(3.0));
  for (double lambda : kLambdas)
    for (double t : {-0.9, -0.2, 0.4, 1.0}) {
      double expected = 2 * lambda * (lambda + 1) * t * t - lambda;
      CHECK(gegenbauer_eval(2, lambda, t) == Approx(expected).epsilon(1e-14));
    }
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 50; ++i) {
    int n = i % 20;
    double lambda = 0.2 + 3 * std::abs(u(rng)), t = u(rng);
    CHECK(gegenbauer_eval(n, lambda, -t) == Approx((n % 2 ? -1 : 1) * gegenbauer_eval(n, lambda, t)).epsilon(1e-12));
  }
  CHECK(gegenbauer_at_one(0, 1.7) == 1.0);
  for (int n = 0; n < 10; ++n) CHECK(gegenbauer_at_one(n, 1.0) == Approx(n + 1.0));
  CHECK(gegenbauer_at_one(2, 0.5) == Approx(1.0));
  for (double lambda : kLambdas)
    for (int n = 0; n <= 25; ++n)
      CHECK(gegenbauer_at_one(n, lambda) == Approx(gegenbauer_eval(n, lambda, 1.0)).epsilon(1e-12));
  CHECK_THROWS(gegenbauer_eval(2, 0.0, 0.5));
  CHECK_THROWS(gegenbauer_at_one(2, -1.0));
}

TEST_CASE("normalizing constant") {
  CHECK(c_lambda(0.5) == Approx(0.5).epsilon(1e-15));
  CHECK(c_lambda(1.0) == Approx(2 / std::numbers::pi).epsilon(1e-15));
  // \int (1 - t^2) dt = 4/3 and \int (1 - t^2)^{3/2} dt = 3 pi / 8.
  CHECK(c_lambda(1.5) == Approx(0.75).epsilon(1e-15));
  CHECK(c_lambda(2.0) == Approx(8 / (3 * std::numbers::pi)).epsilon(1e-15));
  for (double lambda : {0.3, 0.5, 1.0, 2.0, 3.5, 7.25}) {
    auto rule = gauss_jacobi_rule(20, lambda);
    CHECK(c_lambda(lambda) * rule.weights.sum() == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Gauss-Jacobi rules") {
  auto one = gauss_jacobi_rule(1, 0.5);
  CHECK(one.nodes(0) == Approx(0.0));
  CHECK(one.weights(0) == Approx(2.0).epsilon(1e-15));
  CHECK(one.exact_degree == 1);

  for (double lambda : {0.5, 1.0, 2.0, 3.5, 0.8}) {
    for (int m : {1, 2, 5, 17, 40}) {
      auto rule = gauss_jacobi_rule(m, lambda);
      for (int k = 0; k <= 2 * m - 1; ++k) {
        double q = 0.0;
        for (int j = 0; j < m; ++j) q += rule.weights(j) * std::pow(rule.nodes(j), k);
        double exact = beta_moment(k, lambda);
        if (exact == 0.0)
          CHECK(std::abs(q) <= 1e-13 * beta_moment(0, lambda));
        else
          CHECK(q == Approx(exact).epsilon(1e-13));
      }
    }
  }
  for (int m : {3, 50, 200}) {
    auto rule = gauss_jacobi_rule(m, 1.3);
    for (int j = 0; j < m; ++j) {
      CHECK(rule.weights(j) > 0.0);
      CHECK(rule.nodes(j) == -rule.nodes(m - 1 - j));
      CHECK(std::abs(rule.nodes(j)) < 1.0);
    }
  }
  // Non-symmetric Jacobi weight (1-t)^a (1+t)^b, checked on its mass and mean.
  auto jr = gauss_jacobi(12, 0.5, 1.5);
  double mass = std::exp(3 * std::numbers::ln2 + std::lgamma(1.5) + std::lgamma(2.5) - std::lgamma(4.0));
  CHECK(jr.weights.sum() == Approx(mass).epsilon(1e-13));
  CHECK(jr.weights.dot(jr.nodes) / mass == Approx((1.5 - 0.5) / (0.5 + 1.5 + 2)).epsilon(1e-13));
  CHECK_THROWS(gauss_jacobi(0, 0.0, 0.0));
  CHECK_THROWS(gauss_jacobi(3, -1.0, 0.0));
}

TEST_CASE("orthogonality and the norm identity") {
  for (double lambda : kLambdas) {
    auto rule = gauss_jacobi_rule(40, lambda);
    const double c = c_lambda(lambda);
    for (int n = 0; n <= 25; ++n)
      for (int m = 0; m <= n; ++m) {
        double s = 0.0;
        for (int j = 0; j < rule.size(); ++j)
          s += rule.weights(j) * gegenbauer_eval(n, lambda, rule.nodes(j)) * gegenbauer_eval(m, lambda, rule.nodes(j));
        s *= c;
        if (n == m) {
          double expected = gegenbauer_at_one(n, lambda) * lambda / (n + lambda);
          CHECK(std::abs(s - expected) <= 1e-11 * expected);
        } else {
          CHECK(std::abs(s) <= 1e-11 * gegenbauer_at_one(n, lambda));
        }
      }
  }
}

TEST_CASE("lambda coefficients by quadrature") {
  const double lambda = 2.0;
  auto rule = gauss_jacobi_rule(64, lambda);
  auto c3 = Function1D::gegenbauer(3, lambda);
  for (int n = 0; n <= 8; ++n) {
    auto e = lambda_coefficient(c3, n, lambda, rule);
    CHECK(close(e.value, n == 3 ? 0.4 : 0.0, 1e-13, 1e-14));
    CHECK(e.error_bound < 1e-13);
  }
  auto one = Function1D::constant(1.0);
  CHECK(lambda_coefficient(one, 0, lambda, rule).value == Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(lambda_coefficient(one, 3, lambda, rule).value) < 1e-14);
  auto t = Function1D::polynomial({0.0, 1.0});
  auto half = gauss_jacobi_rule(8, 0.5);
  CHECK(lambda_coefficient(t, 1, 0.5, half).value == Approx(1.0 / 3.0).epsilon(1e-14));
  for (double l : kLambdas)
    CHECK(lambda_coefficient(t, 1, l, gauss_jacobi_rule(8, l)).value == Approx(1.0 / (2 * (1 + l))).epsilon(1e-14));
  CHECK_THROWS(lambda_coefficient(t, 1, 1.0, half));

  // Linearity.
  auto f = parse_function("sum 0.75*exp + -2*cos 3");
  auto e1 = Function1D::exponential(), e2 = Function1D::cosine(3);
  for (int n = 0; n < 6; ++n)
    CHECK(lambda_coefficient(f, n, lambda, rule).value ==
          Approx(0.75 * lambda_coefficient(e1, n, lambda, rule).value - 2 * lambda_coefficient(e2, n, lambda, rule).value)
              .epsilon(1e-12));
}

TEST_CASE("analytic coefficients match Bessel closed forms") {
  for (double lambda : kLambdas)
    for (int n = 0; n <= 30; ++n) {
      // exp(t): Gamma(lambda+1) 2^lambda I_{n+lambda}(1).
      double exp_oracle = std::tgamma(lambda + 1) * std::pow(2.0, lambda) * std::cyl_bessel_i(n + lambda, 1.0);
      auto e = lambda_coefficient_analytic(Function1D::exponential(), n, lambda);
      REQUIRE(e.has_value());
      CHECK(e->value == Approx(exp_oracle).epsilon(1e-12));
      CHECK(e->value > 0.0);
      // cos(w t): Gamma(lambda+1) (2/w)^lambda (-1)^{n/2} J_{n+lambda}(w) for even n.
      const double w = 2.5;
      double cos_oracle =
          n % 2 ? 0.0
                : std::tgamma(lambda + 1) * std::pow(2.0 / w, lambda) * ((n / 2) % 2 ? -1.0 : 1.0) *
                      std::cyl_bessel_j(n + lambda, w);
      auto c = lambda_coefficient_analytic(Function1D::cosine(w), n, lambda);
      REQUIRE(c.has_value());
      CHECK(close(c->value, cos_oracle, 1e-11, 0.0));
    }
  CHECK_FALSE(lambda_coefficient_analytic(Function1D::step(0.0), 1, 1.0).has_value());
}

TEST_CASE("analytic and quadrature paths agree") {
  const double lambda = 1.5;
  auto rule = gauss_jacobi_rule(80, lambda);
  for (const char* text : {"exp", "cos 4", "poly 1,-2,0.5,3", "sum 2*exp + 1*poly 0,0,1", "even exp", "odd cos 2"}) {
    auto g = parse_function(text);
    for (int n = 0; n <= 8; ++n) {
      auto a = lambda_coefficient_analytic(g, n, lambda);
      REQUIRE(a.has_value());
      CHECK(close(a->value, lambda_coefficient(g, n, lambda, rule).value, 1e-11, 1e-14));
    }
  }
  for (int k = 0; k <= 12; ++k)
    for (int n = 0; n <= 12; ++n) {
      double q = lambda_coefficient(Function1D::polynomial([&] {
                                      std::vector<double> c(k + 1, 0.0);
                                      c[k] = 1.0;
                                      return c;
                                    }()),
                                    n, lambda, rule)
                     .value;
      CHECK(close(monomial_lambda_coefficient(k, n, lambda), q, 1e-12, 1e-15));
    }
}

TEST_CASE("zero classification") {
  CHECK(classify_coefficient(0.0, 0.0, 1.0, 1e-9) == ZeroFlag::zero);
  CHECK(classify_coefficient(1e-12, 1e-13, 1.0, 1e-9) == ZeroFlag::zero);
  CHECK(classify_coefficient(1e-12, 1e-8, 1.0, 1e-9) == ZeroFlag::indeterminate);
  CHECK(classify_coefficient(0.5, 1e-14, 1.0, 1e-9) == ZeroFlag::nonzero);
  CHECK(classify_coefficient(1e-6, 1e-5, 1.0, 1e-9) == ZeroFlag::indeterminate);
  CHECK(flag_name(ZeroFlag::indeterminate) == "indeterminate");
}

TEST_CASE("coefficient profiles") {
  auto one = coefficient_profile(Function1D::constant(1.0), 2.0, 5);
  REQUIRE(one.entries.size() == 6);
  CHECK(one.entries[0].flag == ZeroFlag::nonzero);
  for (int n = 1; n <= 5; ++n) CHECK(one.entries[n].is_zero());

  auto e = coefficient_profile(Function1D::exponential(), 2.0, 20);
  for (const auto& entry : e.entries) CHECK(entry.flag == ZeroFlag::nonzero);

  auto c2 = coefficient_profile(Function1D::gegenbauer(2), 1.25, 4);
  for (const auto& entry : c2.entries) CHECK(entry.is_zero() == (entry.n != 2));

  // Forcing quadrature reproduces the structural zeros of polynomials.
  auto q = coefficient_profile(parse_function("poly 1,0,1"), 2.0, 6, kDefaultZeroTolerance, 0,
                               MethodPreference::quadrature);
  CHECK(q.degrees_flagged(ZeroFlag::zero) == std::vector<int>{1, 3, 4, 5, 6});
  CHECK(q.quadrature_nodes == 64);
  CHECK(default_quadrature_nodes(Function1D::exponential(), 20) == 256);
  CHECK(default_quadrature_nodes(Function1D::polynomial(std::vector<double>(41, 1.0)), 20) == 136);

  // Doubling m leaves a stable quadrature profile unchanged.
  auto step = Function1D::step(0.3);
  auto p1 = coefficient_profile(parse_function("cos 3"), 1.0, 10, 1e-9, 64, MethodPreference::quadrature);
  auto p2 = coefficient_profile(parse_function("cos 3"), 1.0, 10, 1e-9, 128, MethodPreference::quadrature);
  for (int n = 0; n <= 10; ++n) {
    CHECK(p1.entries[n].flag == p2.entries[n].flag);
    CHECK(close(p1.entries[n].value, p2.entries[n].value, 1e-12, 1e-15));
  }
  auto sp = coefficient_profile(step, 1.0, 6);
  for (const auto& entry : sp.entries) CHECK(entry.method == CoefficientMethod::quadrature);
  CHECK_THROWS(coefficient_profile(step, 1.0, -1));
}

TEST_CASE("segment norms") {
  for (double lambda : kLambdas) {
    auto rule = gauss_jacobi_rule(60, lambda);
    for (double p : {1.0, 2.0, 3.0}) CHECK(lp_norm_segment(Function1D::constant(1.0), p, lambda, rule) == Approx(1.0));
    for (int n : {0, 3, 7}) {
      auto g = Function1D::gegenbauer(n, lambda);
      CHECK(lp_norm_segment(g, 2.0, lambda, rule) ==
            Approx(std::sqrt(gegenbauer_at_one(n, lambda) * lambda / (n + lambda))).epsilon(1e-12));
    }
    for (const char* text : {"exp", "cos 5", "poly 0.3,-1,2", "step 0.2"}) {
      auto g = parse_function(text);
      CHECK(lp_norm_segment(g, 1.0, lambda, rule) <= lp_norm_segment(g, 2.0, lambda, rule) + 1e-15);
    }
  }
  CHECK_THROWS(lp_norm_segment(Function1D::exponential(), 0.5, 1.0, gauss_jacobi_rule(4, 1.0)));
}
