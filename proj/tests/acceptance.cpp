// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// A limit of 0 means the criterion states no runtime bound.
#include "dunkl/fundamentality.hpp"
#include "dunkl/gegenbauer.hpp"
#include "dunkl/harmonic.hpp"
#include "dunkl/sphere.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace dunkl;
using Q = Rational;
using PQ = MultiPoly<Q>;
using Ctx = DunklContext<double>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

std::string fmt(const char* f, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0.0 && secs > limit_seconds) {
    o.pass = false;
    o.detail += "; over the time limit";
  }
  if (!o.pass) ++failures;
  const std::string limit = limit_seconds > 0.0 ? fmt(", limit %.0f s", limit_seconds) : "";
  std::printf("%s  [%d] %s: %s (%.2f s%s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              limit.c_str());
  std::fflush(stdout);
}

// Degrees n <= N other than `keep`: Lambda_n(C_k) = 0 for n != k, and 1, t
// are multiples of C_0, C_1.
std::vector<int> all_but(int keep, int N) {
  std::vector<int> out;
  for (int n = 0; n <= N; ++n)
    if (n != keep) out.push_back(n);
  return out;
}

Outcome gegenbauer_norms() {
  double worst = 0.0;
  for (double lambda : {0.5, 1.0, 2.0, 3.5}) {
    const QuadratureRule rule = gauss_jacobi_rule(64, lambda);
    const double c = c_lambda(lambda);
    for (int n = 0; n <= 25; ++n) {
      double integral = 0.0;
      for (int q = 0; q < rule.size(); ++q) {
        const double v = gegenbauer_eval(n, lambda, rule.nodes(q));
        integral += rule.weights(q) * v * v;
      }
      const double expected = gegenbauer_at_one(n, lambda) * lambda / (n + lambda);
      worst = std::max(worst, std::abs(c * integral - expected) / expected);
    }
  }
  return {worst <= 1e-11, fmt("max relative error %.2e over n <= 25, lambda in {1/2, 1, 2, 7/2}", worst)};
}

Outcome funk_hecke() {
  const double lambda1 = coefficient_profile(Function1D::polynomial({0.0, 1.0}), 0.5, 1).entries[1].value;
  const double classical = std::abs(lambda1 - 1.0 / 3.0);
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  int checks = 0;
  for (const Ctx& ctx : {Ctx::builtin(Family::zd2, 3, {0.0, 0.0, 0.0}), Ctx::builtin(Family::zd2, 2, {1.0, 1.0})}) {
    const SphereMeasure measure(ctx);
    const auto xs = node_set(ctx.dimension(), 6, NodeScheme::uniform_random, 77);
    std::vector<Function1D> gs;
    for (int degree = 0; degree <= 8; ++degree) {
      std::vector<double> c(degree + 1);
      for (auto& v : c) v = u(rng);
      gs.push_back(Function1D::polynomial(c));
    }
    for (int k : {3, 6, 8}) gs.push_back(Function1D::gegenbauer(k));
    for (const auto& g : gs)
      for (int n = 0; n <= 6; ++n)
        for (double r : funk_hecke_residuals(ctx, measure, g, n, harmonic_elements(ctx, n), xs)) {
          worst = std::max(worst, r);
          ++checks;
        }
  }
  return {worst <= 1e-7 && classical <= 1e-12,
          fmt("max residual %.2e", worst) + " over " + std::to_string(checks) +
              " (g, n, Y) triples on kappa = 0 (d = 3) and Z_2^2 kappa = (1,1); |Lambda_1(t) - 1/3| = " +
              fmt("%.1e", classical)};
}

Outcome intertwining() {
  long checks = 0, bad = 0;
  for (auto kappa : {std::vector<Q>{Q(1), Q(1)}, {Q(2), Q(3)}}) {
    const auto ctx = DunklContext<Q>::builtin(Family::zd2, 2, kappa);
    for (int n = 0; n <= 10; ++n)
      for (const auto& m : monomials_of_degree(2, n)) {
        const PQ f = PQ::monomial(m);
        const PQ Vf = intertwine(ctx, f);
        for (int i = 0; i < 2; ++i) {
          ++checks;
          if (dunkl_apply(ctx, i, Vf) != intertwine(ctx, partial_derivative(f, i))) ++bad;
        }
      }
  }
  return {bad == 0, std::to_string(checks) + " exact identities, " + std::to_string(bad) + " mismatches"};
}

Outcome harmonics() {
  std::string detail;
  bool pass = true;
  struct Case {
    int d;
    std::vector<Q> kappa;
    const char* label;
  };
  const std::vector<Case> cases = {{3, {Q(0), Q(0), Q(0)}, "d=3 kappa=0"},
                                   {2, {Q(1), Q(1)}, "d=2 kappa=(1,1)"},
                                   {3, {Q(1), Q(2), Q(1)}, "d=3 kappa=(1,2,1)"}};
  int orth_pairs = 0;
  for (const auto& c : cases) {
    const auto ctx = DunklContext<Q>::builtin(Family::zd2, c.d, c.kappa);
    std::vector<std::vector<PQ>> by_degree;
    for (int n = 0; n <= 8; ++n) {
      auto elements = harmonic_elements(ctx, n);
      if (static_cast<long long>(elements.size()) != harmonic_dimension(c.d, n)) {
        pass = false;
        detail += std::string(" dimension mismatch at ") + c.label + " n=" + std::to_string(n) + ";";
      }
      for (const auto& Y : elements)
        if (!dunkl_laplacian(ctx, Y).is_zero()) pass = false;
      by_degree.push_back(std::move(elements));
    }
    for (int n = 0; n <= 6; ++n)
      for (int m = n + 1; m <= 6; ++m)
        for (const auto& Y : by_degree[n])
          for (const auto& Z : by_degree[m]) {
            ++orth_pairs;
            if (exact_sphere_integral(ctx, Y * Z) != Q(0)) {
              pass = false;
              detail += std::string(" nonzero inner product at ") + c.label + ";";
            }
          }
  }
  return {pass, "dimensions match for n <= 8 on d=3 kappa=0, d=2 kappa=(1,1), d=3 kappa=(1,2,1); " +
                    std::to_string(orth_pairs) + " cross-degree pairs exactly orthogonal" + detail};
}

Outcome theorem() {
  bool pass = true;
  std::string detail;
  double worst_flat = 0.0;
  for (const Ctx& ctx : {Ctx::builtin(Family::zd2, 3, {0.0, 0.0, 0.0}), Ctx::builtin(Family::zd2, 2, {1.0, 1.0})}) {
    const SphereMeasure measure(ctx);
    const std::vector<std::pair<Function1D, int>> cases = {
        {Function1D::constant(1.0), 0}, {Function1D::polynomial({0.0, 1.0}), 1}, {Function1D::gegenbauer(3), 3}};
    for (const auto& [g, keep] : cases) {
      const auto report = is_fundamental(ctx, g, 2.0, 20);
      const auto expected = all_but(keep, 20);
      if (report.verdict != Verdict::not_fundamental || report.witnesses != expected) {
        pass = false;
        detail += " wrong witnesses for " + g.describe() + ";";
      }
      for (int m : report.witnesses) {
        if (m > 4) continue;
        for (double r : density_demo(ctx, measure, g, m, {6, 12, 24}).residuals)
          worst_flat = std::max(worst_flat, std::abs(r - 1.0));
      }
    }
    const auto e = is_fundamental(ctx, Function1D::exponential(), 2.0, 20);
    if (e.verdict != Verdict::fundamental_up_to_n) {
      pass = false;
      detail += " exp not fundamental;";
    }
    const auto demo = density_demo(ctx, measure, Function1D::exponential(), 1, {6, 12, 24});
    const auto& r = demo.residuals;
    if (!(r[0] > r[1] && r[1] > r[2] && r[2] < 0.05)) {
      pass = false;
      detail += " exp density residuals not decreasing below 0.05;";
    }
    detail += fmt(" exp m=1 residuals %.2e", r[0]) + fmt(" > %.2e", r[1]) + fmt(" > %.2e", r[2]) +
              (ctx.kappa().is_zero() ? " (kappa=0 d=3);" : " (Z_2^2 kappa=(1,1));");
  }
  if (worst_flat > 1e-12) pass = false;
  return {pass, "witness sets match the structural zeros for 1, t, C_3; exp fundamental at N=20;" +
                    fmt(" max |residual - 1| at zero witnesses %.1e;", worst_flat) + detail};
}

Outcome corollary() {
  bool pass = true;
  std::string detail;
  const auto even = Function1D::even_part(Function1D::exponential());
  const auto odd = Function1D::odd_part(Function1D::exponential());
  for (const Ctx& ctx : {Ctx::builtin(Family::zd2, 3, {0.0, 0.0, 0.0}), Ctx::builtin(Family::zd2, 2, {1.0, 1.0}),
                         Ctx::builtin(Family::zd2, 3, {0.5, 1.0, 1.5})}) {
    const auto u1 = union_fundamental(ctx, {even, odd}, 1.0, 20);
    const auto e1 = is_fundamental(ctx, even, 1.0, 20);
    const auto o1 = is_fundamental(ctx, odd, 1.0, 20);
    if (u1.verdict != Verdict::fundamental_up_to_n || e1.verdict != Verdict::not_fundamental ||
        o1.verdict != Verdict::not_fundamental)
      pass = false;
    for (int n : e1.witnesses)
      if (n % 2 == 0) pass = false;
    for (int n : o1.witnesses)
      if (n % 2 == 1) pass = false;
    if (e1.witnesses.size() != 10 || o1.witnesses.size() != 11) pass = false;
    for (double p : {2.0, 3.0}) {
      if (!same_verdict(u1, union_fundamental(ctx, {even, odd}, p, 20)) ||
          !same_verdict(e1, is_fundamental(ctx, even, p, 20)) || !same_verdict(o1, is_fundamental(ctx, odd, p, 20)))
        pass = false;
    }
  }
  detail = "union of even and odd parts of exp fundamental up to 20, each part alone not (odd / even witnesses), "
           "identical reports for p in {1, 2, 3} on three groups";
  return {pass, detail};
}

Outcome normalization() {
  const std::vector<Q> kq = {Q(1, 2), Q(1), Q(3, 2)};
  const auto exact_ctx = DunklContext<Q>::builtin(Family::zd2, 3, kq);
  const Q exact_mass = exact_sphere_integral(exact_ctx, PQ::constant(3, Q(1)));
  const Ctx ctx = Ctx::builtin(Family::zd2, 3, {0.5, 1.0, 1.5});
  const SphereFunction one = SphereFunction::from_polynomial(MultiPoly<double>::constant(3, 1.0));
  const double tensor = SphereMeasure(ctx).integrate(one).value;
  SphereConfig mc;
  mc.backend = SphereBackend::monte_carlo;
  mc.mc_samples = 1'000'000;
  const Integral monte = SphereMeasure(ctx, mc).integrate(one);
  const double z = std::abs(monte.value - 1.0) / monte.standard_error;

  double worst_a = 0.0;
  for (const Ctx& c : {Ctx::builtin(Family::zd2, 3, {0.0, 0.0, 0.0}), Ctx::builtin(Family::zd2, 2, {1.0, 1.0}),
                       Ctx::builtin(Family::zd2, 2, {2.0, 3.0}), Ctx::builtin(Family::zd2, 3, {1.0, 2.0, 1.0}),
                       Ctx::builtin(Family::zd2, 4, {1.0, 0.0, 3.0, 2.0})}) {
    const double closed = *a_kappa_closed_form(c), mono = *a_kappa_monomial(c);
    worst_a = std::max(worst_a, std::abs(closed - mono) / closed);
  }
  const bool pass = exact_mass == Q(1) && std::abs(tensor - 1.0) <= 1e-10 && z <= 4.0 && worst_a <= 1e-13;
  return {pass, "exact mass " + exact_mass.str() + fmt(", tensor |mass - 1| = %.1e", std::abs(tensor - 1.0)) +
                    fmt(", Monte Carlo (1e6) %.6f", monte.value) + fmt(" = 1 %+.2f standard errors", z) +
                    fmt(", a_kappa closed form vs monomial max rel diff %.1e", worst_a)};
}

Outcome norm_contract() {
  double worst = 0.0;
  std::string detail;
  struct Case {
    Ctx ctx;
    const char* label;
  };
  for (const auto& c : {Case{Ctx::builtin(Family::zd2, 2, {1.0, 1.0}), "Z_2^2 kappa=(1,1)"},
                        Case{Ctx::builtin(Family::zd2, 3, {0.5, 1.0, 1.5}), "Z_2^3 kappa=(1/2,1,3/2)"}}) {
    const SphereMeasure measure(c.ctx);
    const auto xs = node_set(c.ctx.dimension(), 50, NodeScheme::uniform_random, 31);
    double local = 0.0;
    for (const auto& g : {Function1D::constant(1.0), Function1D::gegenbauer(2), Function1D::exponential()})
      for (double p : {1.0, 2.0}) {
        // exp: ten Jacobi nodes per axis already resolve the kernel to round-off.
        const int order = g.kind() == Function1D::Kind::exponential ? 10 : 0;
        local = std::max(local, operator_norm_check(c.ctx, measure, g, p, xs, order));
      }
    worst = std::max(worst, local);
    detail += std::string(detail.empty() ? "" : ", ") + c.label + fmt(" max ratio %.15f", local);
  }
  return {worst <= 1.0 + 1e-9, detail + " (g in {1, C_2, exp}, p in {1, 2}, 50 random x)"};
}

}  // namespace

int main() {
  criterion(1, "Gegenbauer norm identity", 1.0, gegenbauer_norms);
  criterion(2, "Funk-Hecke identity", 120.0, funk_hecke);
  criterion(3, "Intertwining identity D_i V = V d_i", 30.0, intertwining);
  criterion(4, "kappa-harmonic dimensions and orthogonality", 0.0, harmonics);
  criterion(5, "Theorem consistency", 300.0, theorem);
  criterion(6, "Corollary for unions", 0.0, corollary);
  criterion(7, "Measure normalization and a_kappa", 0.0, normalization);
  criterion(8, "Norm contract", 0.0, norm_contract);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
