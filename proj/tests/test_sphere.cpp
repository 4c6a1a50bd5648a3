#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dunkl/harmonic.hpp"
#include "dunkl/sphere.hpp"

#include <numbers>
#include <random>

using namespace dunkl;
using doctest::Approx;
using Q = Rational;
using PQ = MultiPoly<Q>;
using PD = MultiPoly<double>;

namespace {

constexpr double pi = std::numbers::pi;

PD random_poly(std::mt19937& rng, int d, int max_degree, int terms) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, max_degree), var(0, d - 1);
  PD p(d);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(d, 0);
    for (int k = deg(rng); k > 0; --k) ++e[var(rng)];
    p.accumulate(Monomial(e), u(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("closed-form monomial integrals") {
  CHECK(monomial_sphere_integral({0, 0, 0}) == Approx(4 * pi).epsilon(1e-15));
  CHECK(monomial_sphere_integral({1, 0, 0}) == 0.0);
  CHECK(monomial_sphere_integral({2, 2}) == Approx(pi / 4).epsilon(1e-15));
  CHECK(abs_monomial_sphere_integral({2, 2}) == Approx(pi / 4).epsilon(1e-15));
  // \int_0^{2 pi} |cos t| dt = 4.
  CHECK(abs_monomial_sphere_integral({1, 0}) == Approx(4.0).epsilon(1e-15));
  CHECK(sphere_area(2) == Approx(2 * pi));
  CHECK(sphere_area(4) == Approx(2 * pi * pi));
  CHECK(normalized_monomial_moment<Q>({2, 0, 0}) == Q(1, 3));
  CHECK(normalized_monomial_moment<Q>({2, 2, 2}) == Q(1, 105));
  CHECK(normalized_monomial_moment<Q>({4, 0}) == Q(3, 8));
}

TEST_CASE("a_kappa") {
  auto classical = DunklContext<double>::builtin(Family::zd2, 3, {0.0, 0.0, 0.0});
  CHECK(a_kappa(classical) == Approx(1 / (4 * pi)).epsilon(1e-15));
  auto z2 = DunklContext<double>::builtin(Family::zd2, 2, {1.0, 1.0});
  CHECK(a_kappa(z2) == Approx(4 / pi).epsilon(1e-15));
  auto z3 = DunklContext<double>::builtin(Family::zd2, 3, {1.0, 2.0, 2.0});
  REQUIRE(a_kappa_closed_form(z3).has_value());
  REQUIRE(a_kappa_monomial(z3).has_value());
  CHECK(std::abs(*a_kappa_closed_form(z3) - *a_kappa_monomial(z3)) <= 1e-13 * *a_kappa_closed_form(z3));
  auto b3 = DunklContext<double>::builtin(Family::b, 3, {1.0, 1.0});
  CHECK_FALSE(a_kappa_closed_form(b3).has_value());
  REQUIRE(a_kappa_monomial(b3).has_value());
  // Quadrature route for a weight that is not polynomial on a non-coordinate group.
  auto b2 = DunklContext<double>::builtin(Family::b, 2, {0.5, 0.5});
  SphereMeasure m(b2);
  CHECK(m.integrate(SphereFunction::from_callable([](const Eigen::VectorXd&) { return 1.0; })).value ==
        Approx(1.0).epsilon(1e-8));
}

TEST_CASE("exact backend in rational arithmetic") {
  auto ctx = DunklContext<Q>::builtin(Family::zd2, 3, {Q(1, 2), Q(1), Q(3, 2)});
  CHECK(exact_sphere_integral(ctx, PQ::constant(3, Q(1))) == Q(1));
  // gamma = 3, d/2 = 3/2: \int x_1^2 d sigma = (1)_1 / (9/2)_1 = 2/9.
  CHECK(exact_sphere_integral(ctx, PQ::monomial(Monomial({2, 0, 0}))) == Q(2, 9));
  CHECK(exact_sphere_integral(ctx, PQ::monomial(Monomial({1, 2, 0}))) == Q(0));
  PQ r2(3);
  for (int i = 0; i < 3; ++i) r2 += PQ::monomial(Monomial::unit(3, i)) * PQ::monomial(Monomial::unit(3, i));
  CHECK(exact_sphere_integral(ctx, r2) == Q(1));

  auto classical = DunklContext<Q>::builtin(Family::zd2, 3, {Q(0), Q(0), Q(0)});
  CHECK(exact_sphere_integral(classical, PQ::monomial(Monomial({2, 0, 0}))) == Q(1, 3));

  // Integer kappa on B_2 goes through the expanded weight; both routes agree
  // when the long-root kappa vanishes.
  auto b2 = DunklContext<Q>::builtin(Family::b, 2, {Q(1), Q(2)});
  PQ r2b = PQ::monomial(Monomial({2, 0})) + PQ::monomial(Monomial({0, 2}));
  CHECK(exact_sphere_integral(b2, PQ::constant(2, Q(1))) == Q(1));
  CHECK(exact_sphere_integral(b2, r2b) == Q(1));
  CHECK(exact_sphere_integral(b2, PQ::monomial(Monomial({2, 0}))) == Q(1, 2));
  auto b3 = DunklContext<Q>::builtin(Family::b, 3, {Q(2), Q(0)});
  auto z3 = DunklContext<Q>::builtin(Family::zd2, 3, {Q(2), Q(2), Q(2)});
  PQ f = PQ::monomial(Monomial({4, 2, 0})) + Q(3) * PQ::monomial(Monomial({0, 2, 2}));
  CHECK(exact_sphere_integral(b3, f) == exact_sphere_integral(z3, f));
  const MultiPoly<Q> w = weight_as_polynomial(b3.root_system(), b3.kappa());
  CHECK(w == weight_as_polynomial(z3.root_system(), z3.kappa()));

  auto bhalf = DunklContext<Q>::builtin(Family::b, 2, {Q(1, 2), Q(1, 2)});
  CHECK_FALSE(has_exact_backend(bhalf));
  CHECK_THROWS_AS(exact_sphere_integral(bhalf, r2b), UnsupportedGroup);
}

TEST_CASE("sigma_kappa is G-invariant") {
  std::mt19937 rng(2);
  auto ctx = DunklContext<Q>::builtin(Family::b, 2, {Q(1), Q(2)});
  for (int t = 0; t < 5; ++t) {
    PD fd = random_poly(rng, 2, 6, 6);
    PQ f = fd.cast<Q>();
    Q base = exact_sphere_integral(ctx, f);
    for (const auto& g : ctx.group().elements) CHECK(exact_sphere_integral(ctx, substitute_linear(f, g)) == base);
  }
}

TEST_CASE("odd polynomials integrate to zero when -I is in G") {
  std::mt19937 rng(3);
  auto ctx = DunklContext<Q>::builtin(Family::b, 3, {Q(1), Q(1)});
  for (int t = 0; t < 4; ++t) {
    PQ f(3);
    for (const auto& m : monomials_of_degree(3, 2 * t + 1)) f.accumulate(m, Q(static_cast<int>(rng() % 7) - 3));
    CHECK(exact_sphere_integral(ctx, f) == Q(0));
  }
}

TEST_CASE("backends agree on polynomial integrands") {
  std::mt19937 rng(4);
  auto ctx = DunklContext<double>::builtin(Family::zd2, 3, {0.5, 1.0, 1.5});
  SphereMeasure exact(ctx, {SphereBackend::exact_monomial});
  SphereMeasure tensor(ctx);
  SphereConfig mc_config;
  mc_config.backend = SphereBackend::monte_carlo;
  mc_config.mc_samples = 200'000;
  SphereMeasure mc(ctx, mc_config);
  auto one = SphereFunction::from_polynomial(PD::constant(3, 1.0));
  CHECK(exact.integrate(one).value == Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(tensor.integrate(one).value - 1.0) <= 1e-10);
  for (int t = 0; t < 6; ++t) {
    auto f = SphereFunction::from_polynomial(random_poly(rng, 3, 8, 10));
    const double e = exact.integrate(f).value;
    CHECK(std::abs(tensor.integrate(f).value - e) <= 1e-10);
    Integral m = mc.integrate(f);
    CHECK(std::abs(m.value - e) <= 4 * m.standard_error);
  }
  // Non-coordinate integer kappa.
  auto b3 = DunklContext<double>::builtin(Family::b, 3, {1.0, 1.0});
  SphereMeasure eb(b3, {SphereBackend::exact_monomial}), tb(b3);
  for (int t = 0; t < 3; ++t) {
    auto f = SphereFunction::from_polynomial(random_poly(rng, 3, 6, 6));
    CHECK(std::abs(tb.integrate(f).value - eb.integrate(f).value) <= 1e-10);
  }
  // The exact backend refuses non-polynomial integrands.
  CHECK_THROWS(exact.integrate(SphereFunction::from_callable([](const Eigen::VectorXd& x) { return x(0); })));
}

TEST_CASE("classical second moment") {
  auto ctx = DunklContext<double>::builtin(Family::zd2, 3, {0.0, 0.0, 0.0});
  SphereMeasure tensor(ctx);
  auto x1sq = SphereFunction::from_polynomial(PD::monomial(Monomial({2, 0, 0})));
  CHECK(tensor.integrate(x1sq).value == Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("Monte Carlo is seed-deterministic") {
  auto ctx = DunklContext<double>::builtin(Family::zd2, 2, {1.0, 1.0});
  SphereConfig c;
  c.backend = SphereBackend::monte_carlo;
  c.mc_samples = 50'000;
  c.seed = 77;
  SphereMeasure a(ctx, c), b(ctx, c);
  CHECK(a.nodes() == b.nodes());
  auto f = SphereFunction::from_polynomial(PD::monomial(Monomial({2, 0})));
  CHECK(a.integrate(f).value == b.integrate(f).value);
  c.seed = 78;
  SphereMeasure other(ctx, c);
  CHECK(other.nodes() != a.nodes());
}

TEST_CASE("inner products and L_p norms") {
  std::mt19937 rng(6);
  auto ctx = DunklContext<double>::builtin(Family::zd2, 2, {1.0, 1.0});
  SphereMeasure m(ctx);
  auto one = SphereFunction::from_polynomial(PD::constant(2, 1.0));
  CHECK(m.inner_product(one, one).value == Approx(1.0).epsilon(1e-13));
  auto c = SphereFunction::from_polynomial(PD::constant(2, -2.5));
  for (double p : {1.0, 2.0, 3.5}) CHECK(lp_norm_sphere(m, c, p) == Approx(2.5).epsilon(1e-13));
  for (int t = 0; t < 5; ++t) {
    auto f = SphereFunction::from_polynomial(random_poly(rng, 2, 6, 5));
    CHECK(m.inner_product(f, f).value >= 0.0);
    CHECK(m.lp_norm(f, 1.0) <= m.lp_norm(f, 2.0) + 1e-14);
    CHECK(m.lp_norm(f, 2.0) <= m.lp_norm(f, 4.0) + 1e-14);
  }
  SphereMeasure e(ctx, {SphereBackend::exact_monomial});
  auto p = SphereFunction::from_polynomial(random_poly(rng, 2, 4, 4));
  CHECK(e.lp_norm(p, 2.0) == Approx(m.lp_norm(p, 2.0)).epsilon(1e-12));
  CHECK_THROWS(e.lp_norm(p, 3.0));
  CHECK_THROWS(m.lp_norm(p, 0.5));
}

TEST_CASE("node sets") {
  auto one = node_set(2, 1, NodeScheme::generalized_spiral);
  REQUIRE(one.size() == 1);
  CHECK(one[0](0) == 1.0);
  CHECK(one[0](1) == 0.0);
  for (int d : {2, 3, 5})
    for (auto scheme : {NodeScheme::uniform_random, NodeScheme::generalized_spiral}) {
      if (d > 3 && scheme == NodeScheme::generalized_spiral) {
        CHECK_THROWS(node_set(d, 10, scheme));
        continue;
      }
      for (const auto& v : node_set(d, 37, scheme, 5)) CHECK(std::abs(v.norm() - 1.0) <= 1e-14);
    }
  auto a = node_set(3, 20, NodeScheme::uniform_random, 99), b = node_set(3, 20, NodeScheme::uniform_random, 99);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  auto spiral = node_set(3, 24, NodeScheme::generalized_spiral);
  CHECK(spiral.front()(2) == -1.0);
  CHECK(spiral.back()(2) == 1.0);
  CHECK_THROWS(node_set(3, 0, NodeScheme::uniform_random));
}

TEST_CASE("harmonic basis dimensions") {
  for (int n = 0; n <= 8; ++n) {
    auto classical = DunklContext<Q>::builtin(Family::zd2, 3, {Q(0), Q(0), Q(0)});
    auto z2 = DunklContext<Q>::builtin(Family::zd2, 2, {Q(1), Q(1)});
    auto z3 = DunklContext<Q>::builtin(Family::zd2, 3, {Q(1), Q(2), Q(1)});
    auto b3 = DunklContext<Q>::builtin(Family::b, 3, {Q(1, 2), Q(2)});
    for (const auto* ctx : {&classical, &z2, &z3, &b3}) {
      auto elems = harmonic_elements(*ctx, n);
      CHECK(static_cast<long long>(elems.size()) == harmonic_dimension(ctx->dimension(), n));
      for (const auto& P : elems) {
        CHECK(P.is_homogeneous());
        CHECK(P.degree() == n);
        CHECK(dunkl_laplacian(*ctx, P).is_zero());
      }
    }
  }
  CHECK(harmonic_dimension(3, 2) == 5);
  CHECK(harmonic_dimension(2, 1) == 2);
  CHECK(harmonic_dimension(2, 5) == 2);
}

TEST_CASE("harmonic bases in floating mode") {
  auto exact = DunklContext<Q>::builtin(Family::zd2, 3, {Q(1), Q(2), Q(1)});
  auto ctx = exact.cast<double>();
  for (int n = 0; n <= 6; ++n) {
    auto elems = harmonic_elements(ctx, n);
    auto exact_elems = harmonic_elements(exact, n);
    REQUIRE(elems.size() == exact_elems.size());
    for (const auto& P : elems) CHECK(dunkl_laplacian(ctx, P).max_abs_coefficient() <= 1e-10 * P.max_abs_coefficient());
  }
  auto basis = harmonic_basis(DunklContext<Q>::builtin(Family::zd2, 2, {Q(1), Q(1)}), 2);
  CHECK(basis.size() == 2);
  CHECK(basis.gram_method == "exact_monomial");
}

TEST_CASE("harmonics of different degrees are orthogonal") {
  auto ctx = DunklContext<Q>::builtin(Family::zd2, 2, {Q(1), Q(1)});
  std::vector<std::vector<PQ>> bases;
  for (int n = 0; n <= 6; ++n) bases.push_back(harmonic_elements(ctx, n));
  for (int n = 0; n <= 6; ++n)
    for (int m = 0; m < n; ++m)
      for (const auto& Y : bases[n])
        for (const auto& Z : bases[m]) CHECK(exact_sphere_integral(ctx, Y * Z) == Q(0));
  // Gram diagonal matches the squared L_2 norm.
  auto basis = harmonic_basis(ctx, 4);
  SphereMeasure m(ctx.cast<double>());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto f = SphereFunction::from_polynomial(basis.elements[i].cast<double>());
    CHECK(std::pow(m.lp_norm(f, 2.0), 2) == Approx(to_double(basis.gram(i, i))).epsilon(1e-12));
  }
  // A non-exact kappa falls back to quadrature for the Gram matrix.
  auto bhalf = DunklContext<double>::builtin(Family::b, 2, {0.5, 0.5});
  auto qb = harmonic_basis(bhalf, 3);
  CHECK(qb.gram_method == "tensor_quadrature");
  CHECK(qb.gram.rows() == 2);
}
