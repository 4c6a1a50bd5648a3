// The measure d sigma_kappa = a_kappa w_kappa d omega on S^{d-1}: closed-form
// monomial moments, the normalization a_kappa, three integration backends
// and the weighted L_p norms.
#ifndef DUNKL_SPHERE_HPP
#define DUNKL_SPHERE_HPP

#include "dunkl/dunkl_ops.hpp"
#include "dunkl/multipoly.hpp"
#include "dunkl/reflection.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dunkl {

/// \int x^alpha d omega / \int d omega = prod_i (1/2)_{alpha_i/2} / (d/2)_{|alpha|/2},
/// zero when some alpha_i is odd. Exact in rational mode.
template <typename Scalar>
Scalar normalized_monomial_moment(const std::vector<int>& alpha) {
  const int d = static_cast<int>(alpha.size());
  int half_total = 0;
  Scalar num(1);
  const Scalar half = ScalarTraits<Scalar>::from_ratio(1, 2);
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
    if (a % 2) return Scalar(0);
    num *= pochhammer(half, a / 2);
    half_total += a / 2;
  }
  return num / pochhammer(ScalarTraits<Scalar>::from_ratio(d, 2), half_total);
}

/// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

/// \int_{S^{d-1}} x^alpha d omega (signed; zero if any exponent is odd).
double monomial_sphere_integral(const std::vector<int>& alpha);

/// \int_{S^{d-1}} prod |x_i|^{alpha_i} d omega = 2 prod Gamma((alpha_i+1)/2) / Gamma((d+|alpha|)/2).
double abs_monomial_sphere_integral(const std::vector<int>& alpha);

/// True when \int f d sigma_kappa has a closed form for polynomial f:
/// kappa = 0, kappa carried by coordinate axes (Z_2^d), or integer kappa.
template <typename Scalar>
bool has_exact_backend(const DunklContext<Scalar>& ctx) {
  if (ctx.coordinate_kappa()) return true;
  for (const auto& k : ctx.kappa().values)
    if (!is_integer_valued(k)) return false;
  return true;
}

/// \int f d sigma_kappa in closed form. For coordinate kappa
///   \int x^alpha d sigma_kappa = prod_i (kappa_i+1/2)_{alpha_i/2} / (gamma+d/2)_{|alpha|/2},
/// for integer kappa the weight is expanded and unweighted moments are summed.
/// Rational inputs give exact results.
template <typename Scalar>
Scalar exact_sphere_integral(const DunklContext<Scalar>& ctx, const MultiPoly<Scalar>& f) {
  if (f.dimension() != ctx.dimension()) throw DimensionMismatch("polynomial and context dimensions differ");
  const int d = ctx.dimension();
  const Scalar half = ScalarTraits<Scalar>::from_ratio(1, 2);
  if (auto per_axis = ctx.coordinate_kappa()) {
    const Scalar base = ctx.gamma_kappa() + ScalarTraits<Scalar>::from_ratio(d, 2);
    Scalar total(0);
    for (const auto& [m, c] : f.terms()) {
      Scalar term = c;
      int half_total = 0;
      for (int i = 0; i < d && term != Scalar(0); ++i) {
        if (m[i] % 2) term = Scalar(0);
        else {
          term *= pochhammer(Scalar((*per_axis)[i] + half), m[i] / 2);
          half_total += m[i] / 2;
        }
      }
      if (term != Scalar(0)) total += term / pochhammer(base, half_total);
    }
    return total;
  }
  if (!has_exact_backend(ctx))
    throw UnsupportedGroup("no closed-form sphere integral for non-integer kappa on the " +
                           family_name(ctx.root_system().family) + " family");
  const MultiPoly<Scalar> w = weight_as_polynomial(ctx.root_system(), ctx.kappa());
  Scalar mass(0);
  for (const auto& [m, c] : w.terms()) mass += c * normalized_monomial_moment<Scalar>(m.exponents());
  Scalar total(0);
  for (const auto& [mf, cf] : f.terms())
    for (const auto& [mw, cw] : w.terms()) {
      Monomial prod = mf * mw;
      total += cf * cw * normalized_monomial_moment<Scalar>(prod.exponents());
    }
  return total / mass;
}

/// Closed-form a_kappa for kappa carried by coordinate axes:
/// 1 / a_kappa = 2 prod Gamma(kappa_i + 1/2) / Gamma(gamma + d/2).
std::optional<double> a_kappa_closed_form(const DunklContext<double>& ctx);

/// a_kappa from the expanded weight polynomial (integer kappa only).
std::optional<double> a_kappa_monomial(const DunklContext<double>& ctx);

/// a_kappa by the best available route: closed form, monomial expansion, then
/// tensor quadrature.
double a_kappa(const DunklContext<double>& ctx);

enum class SphereBackend { exact_monomial, tensor_quadrature, monte_carlo };

std::string backend_name(SphereBackend b);
SphereBackend parse_backend(const std::string& name);

inline constexpr std::size_t kDefaultMonteCarloSamples = 1'000'000;
inline constexpr std::uint64_t kDefaultSeed = 20240229;

/// Nodes per angular axis when none is configured: 80 up to d = 4, then
/// smaller so that the product rule stays below a few hundred thousand nodes.
int default_tensor_order(int d);

struct SphereConfig {
  SphereBackend backend = SphereBackend::tensor_quadrature;
  int order = 0;  // 0 selects default_tensor_order(d)
  std::size_t mc_samples = kDefaultMonteCarloSamples;
  std::uint64_t seed = kDefaultSeed;
  int max_tensor_dimension = 6;
};

/// A function on the sphere. Evaluation must be safe to call concurrently.
struct SphereFunction {
  std::function<double(const Eigen::VectorXd&)> eval;
  std::optional<MultiPoly<double>> polynomial;
  std::string provenance = "user";

  static SphereFunction from_polynomial(MultiPoly<double> p);
  static SphereFunction from_kernel(KernelTranslate K, Eigen::VectorXd x);
  static SphereFunction from_callable(std::function<double(const Eigen::VectorXd&)> f);

  double operator()(const Eigen::VectorXd& x) const { return eval(x); }
};

struct Integral {
  double value = 0.0;
  double standard_error = 0.0;  // Monte Carlo only
};

/// sigma_kappa with a fixed backend. Tensor-quadrature and Monte Carlo
/// measures precompute their node sets with a_kappa w_kappa folded into the
/// weights; sums are accumulated in fixed-size blocks in a fixed order so
/// results do not depend on the thread count.
class SphereMeasure {
 public:
  explicit SphereMeasure(const DunklContext<double>& ctx, SphereConfig config = {});

  int dimension() const { return dimension_; }
  double a_kappa() const { return a_kappa_; }
  const SphereConfig& config() const { return config_; }
  SphereBackend backend() const { return config_.backend; }

  Integral integrate(const SphereFunction& f) const;
  /// <f, h> = \int f h d sigma_kappa (real-valued functions).
  Integral inner_product(const SphereFunction& f, const SphereFunction& h) const;
  /// (\int |f|^p d sigma_kappa)^{1/p}.
  double lp_norm(const SphereFunction& f, double p) const;

  /// Node set and folded weights (empty for the exact backend).
  const Eigen::MatrixXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  /// Values of f at every node, evaluated in parallel.
  Eigen::VectorXd sample(const SphereFunction& f) const;

 private:
  Integral integrate_samples(const Eigen::VectorXd& values) const;
  double exact_integral(const MultiPoly<double>& p) const;

  DunklContext<double> ctx_;
  SphereConfig config_;
  int dimension_ = 0;
  double a_kappa_ = 0.0;
  Eigen::MatrixXd nodes_;
  Eigen::VectorXd weights_;
};

double lp_norm_sphere(const SphereMeasure& measure, const SphereFunction& f, double p);

enum class NodeScheme { uniform_random, generalized_spiral };

std::string scheme_name(NodeScheme s);
NodeScheme parse_scheme(const std::string& name);

/// Unit vectors on S^{d-1}. uniform_random normalizes seeded Gaussian
/// vectors; generalized_spiral (d = 2, 3) places equally spaced angles on the
/// circle starting at (1, 0) and the Saff-Kuijlaars spiral on S^2.
std::vector<Eigen::VectorXd> node_set(int d, int count, NodeScheme scheme, std::uint64_t seed = kDefaultSeed);

}  // namespace dunkl

#endif  // DUNKL_SPHERE_HPP
