#include "dunkl/sphere.hpp"
#include "dunkl/gegenbauer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <thread>

namespace dunkl {

namespace {

// Fixed block size for reductions: the summation order depends only on the
// node count, never on the number of threads.
constexpr Eigen::Index kBlock = 4096;

// Product rules beyond this many nodes are refused.
constexpr double kMaxTensorNodes = 5e7;

template <typename Fn>
void parallel_blocks(Eigen::Index n, Fn&& fn) {
  const Eigen::Index blocks = (n + kBlock - 1) / kBlock;
  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
  if (blocks <= 1 || threads == 1) {
    for (Eigen::Index b = 0; b < blocks; ++b) fn(b * kBlock, std::min(n, (b + 1) * kBlock));
    return;
  }
  std::vector<std::future<void>> jobs;
  std::atomic<Eigen::Index> next{0};
  for (unsigned t = 0; t < std::min<Eigen::Index>(threads, blocks); ++t)
    jobs.push_back(std::async(std::launch::async, [&] {
      for (Eigen::Index b = next++; b < blocks; b = next++) fn(b * kBlock, std::min(n, (b + 1) * kBlock));
    }));
  for (auto& j : jobs) j.get();
}

// Gauss-Legendre rule on [a, b].
std::pair<Eigen::VectorXd, Eigen::VectorXd> legendre_panel(int m, double a, double b) {
  JacobiRule r = gauss_jacobi(m, 0.0, 0.0);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  return {(mid + half * r.nodes.array()).matrix(), (half * r.weights.array()).matrix()};
}

// One angular axis split into equal panels, `order` nodes in total.
std::pair<Eigen::VectorXd, Eigen::VectorXd> angular_axis(int order, double length, int panels) {
  const int per_panel = std::max(1, order / panels);
  Eigen::VectorXd nodes(per_panel * panels), weights(per_panel * panels);
  for (int p = 0; p < panels; ++p) {
    auto [x, w] = legendre_panel(per_panel, length * p / panels, length * (p + 1) / panels);
    nodes.segment(p * per_panel, per_panel) = x;
    weights.segment(p * per_panel, per_panel) = w;
  }
  return {nodes, weights};
}

// Spherical-coordinate product rule for d omega:
//   x_1 = cos t_1, x_k = sin t_1 ... sin t_{k-1} cos t_k, ..., x_d = sin t_1 ... sin t_{d-2} sin phi,
//   d omega = prod_k sin^{d-1-k}(t_k) dt_k dphi.
// Polar angles are split at pi/2 and the azimuth into quarters, so every
// coordinate keeps one sign on each panel.
void tensor_rule(int d, int order, Eigen::MatrixXd& nodes, Eigen::VectorXd& weights) {
  const auto polar = angular_axis(order, std::numbers::pi, 2);
  const auto azimuth = angular_axis(order, 2 * std::numbers::pi, 4);
  const Eigen::Index np = polar.first.size(), na = azimuth.first.size();
  const double total = std::pow(static_cast<double>(np), d - 2) * static_cast<double>(na);
  if (total > kMaxTensorNodes)
    throw std::length_error("tensor quadrature with " + std::to_string(static_cast<long long>(total)) +
                            " nodes is too large; lower the order or use the monte_carlo backend");
  const Eigen::Index count = static_cast<Eigen::Index>(total);
  nodes.resize(d, count);
  weights.resize(count);
  std::vector<Eigen::Index> idx(d - 1, 0);
  for (Eigen::Index q = 0; q < count; ++q) {
    Eigen::Index rest = q;
    for (int k = d - 2; k >= 0; --k) {
      const Eigen::Index base = k == d - 2 ? na : np;
      idx[k] = rest % base;
      rest /= base;
    }
    double prefix = 1.0, w = 1.0;
    for (int k = 0; k < d - 2; ++k) {
      const double t = polar.first(idx[k]);
      nodes(k, q) = prefix * std::cos(t);
      w *= polar.second(idx[k]) * std::pow(std::sin(t), d - 2 - k);
      prefix *= std::sin(t);
    }
    const double phi = azimuth.first(idx[d - 2]);
    nodes(d - 2, q) = prefix * std::cos(phi);
    nodes(d - 1, q) = prefix * std::sin(phi);
    weights(q) = w * azimuth.second(idx[d - 2]);
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform points from normalized Gaussians, drawn in blocks whose generators
// are seeded from (seed, block index).
Eigen::MatrixXd uniform_sphere_points(int d, std::size_t count, std::uint64_t seed) {
  Eigen::MatrixXd pts(d, static_cast<Eigen::Index>(count));
  parallel_blocks(static_cast<Eigen::Index>(count), [&](Eigen::Index begin, Eigen::Index end) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(begin / kBlock))));
    std::normal_distribution<double> normal;
    for (Eigen::Index q = begin; q < end; ++q) {
      double norm = 0.0;
      do {
        for (int i = 0; i < d; ++i) pts(i, q) = normal(rng);
        norm = pts.col(q).norm();
      } while (norm == 0.0);
      pts.col(q) /= norm;
    }
  });
  return pts;
}

double weight_at(const DunklContext<double>& ctx, const Eigen::VectorXd& x) {
  return weight_eval(ctx.root_system(), ctx.kappa(), x);
}

}  // namespace

double sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

double monomial_sphere_integral(const std::vector<int>& alpha) {
  return sphere_area(static_cast<int>(alpha.size())) * normalized_monomial_moment<double>(alpha);
}

double abs_monomial_sphere_integral(const std::vector<int>& alpha) {
  double log_num = 0.0;
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
    log_num += std::lgamma((a + 1) / 2.0);
    total += a;
  }
  return 2.0 * std::exp(log_num - std::lgamma((static_cast<double>(alpha.size()) + total) / 2.0));
}

std::optional<double> a_kappa_closed_form(const DunklContext<double>& ctx) {
  auto per_axis = ctx.coordinate_kappa();
  if (!per_axis) return std::nullopt;
  const int d = ctx.dimension();
  double log_mass = std::log(2.0) - std::lgamma(ctx.gamma_kappa() + d / 2.0);
  for (double k : *per_axis) log_mass += std::lgamma(k + 0.5);
  return std::exp(-log_mass);
}

std::optional<double> a_kappa_monomial(const DunklContext<double>& ctx) {
  for (double k : ctx.kappa().values)
    if (!is_integer_valued(k)) return std::nullopt;
  const MultiPoly<double> w = weight_as_polynomial(ctx.root_system(), ctx.kappa());
  double mass = 0.0;
  for (const auto& [m, c] : w.terms()) mass += c * monomial_sphere_integral(m.exponents());
  return 1.0 / mass;
}

double a_kappa(const DunklContext<double>& ctx) {
  if (auto a = a_kappa_closed_form(ctx)) return *a;
  if (auto a = a_kappa_monomial(ctx)) return *a;
  const int d = ctx.dimension();
  Eigen::MatrixXd nodes;
  Eigen::VectorXd weights;
  tensor_rule(d, default_tensor_order(d), nodes, weights);
  double mass = 0.0;
  for (Eigen::Index q = 0; q < weights.size(); ++q) mass += weights(q) * weight_at(ctx, nodes.col(q));
  if (!std::isfinite(mass) || !(mass > 0.0)) throw std::runtime_error("weight integral is not finite and positive");
  return 1.0 / mass;
}

std::string backend_name(SphereBackend b) {
  switch (b) {
    case SphereBackend::exact_monomial: return "exact_monomial";
    case SphereBackend::tensor_quadrature: return "tensor_quadrature";
    case SphereBackend::monte_carlo: return "monte_carlo";
  }
  return "tensor_quadrature";
}

SphereBackend parse_backend(const std::string& name) {
  if (name == "exact_monomial" || name == "exact") return SphereBackend::exact_monomial;
  if (name == "tensor_quadrature" || name == "tensor") return SphereBackend::tensor_quadrature;
  if (name == "monte_carlo" || name == "mc") return SphereBackend::monte_carlo;
  throw std::invalid_argument("unknown sphere backend '" + name + "'");
}

int default_tensor_order(int d) {
  if (d <= 4) return 80;
  if (d == 5) return 24;
  return 12;
}

SphereFunction SphereFunction::from_polynomial(MultiPoly<double> p) {
  SphereFunction f;
  f.polynomial = std::move(p);
  f.eval = [poly = *f.polynomial](const Eigen::VectorXd& x) { return dunkl::eval(poly, x); };
  f.provenance = "polynomial";
  return f;
}

SphereFunction SphereFunction::from_kernel(KernelTranslate K, Eigen::VectorXd x) {
  SphereFunction f;
  f.eval = [K = std::move(K), x = std::move(x)](const Eigen::VectorXd& y) { return K(x, y); };
  f.provenance = "kernel translate";
  return f;
}

SphereFunction SphereFunction::from_callable(std::function<double(const Eigen::VectorXd&)> fn) {
  SphereFunction f;
  f.eval = std::move(fn);
  f.provenance = "user";
  return f;
}

SphereMeasure::SphereMeasure(const DunklContext<double>& ctx, SphereConfig config)
    : ctx_(ctx), config_(config), dimension_(ctx.dimension()) {
  const int d = dimension_;
  switch (config_.backend) {
    case SphereBackend::exact_monomial:
      if (!has_exact_backend(ctx_))
        throw UnsupportedGroup("the exact backend needs kappa on coordinate axes or integer kappa");
      a_kappa_ = dunkl::a_kappa(ctx_);
      break;
    case SphereBackend::tensor_quadrature: {
      if (d > config_.max_tensor_dimension)
        throw std::invalid_argument("tensor quadrature is limited to d <= " +
                                    std::to_string(config_.max_tensor_dimension) + "; use monte_carlo");
      if (config_.order == 0) config_.order = default_tensor_order(d);
      if (config_.order < 1) throw std::invalid_argument("tensor quadrature order must be positive");
      a_kappa_ = dunkl::a_kappa(ctx_);
      tensor_rule(d, config_.order, nodes_, weights_);
      for (Eigen::Index q = 0; q < weights_.size(); ++q) weights_(q) *= a_kappa_ * weight_at(ctx_, nodes_.col(q));
      break;
    }
    case SphereBackend::monte_carlo: {
      if (config_.mc_samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
      a_kappa_ = dunkl::a_kappa(ctx_);
      nodes_ = uniform_sphere_points(d, config_.mc_samples, config_.seed);
      const double scale = sphere_area(d) * a_kappa_ / static_cast<double>(config_.mc_samples);
      weights_.resize(nodes_.cols());
      for (Eigen::Index q = 0; q < nodes_.cols(); ++q) weights_(q) = scale * weight_at(ctx_, nodes_.col(q));
      break;
    }
  }
}

Eigen::VectorXd SphereMeasure::sample(const SphereFunction& f) const {
  Eigen::VectorXd values(nodes_.cols());
  parallel_blocks(nodes_.cols(), [&](Eigen::Index begin, Eigen::Index end) {
    Eigen::VectorXd x(dimension_);
    for (Eigen::Index q = begin; q < end; ++q) {
      x = nodes_.col(q);
      values(q) = f(x);
    }
  });
  return values;
}

Integral SphereMeasure::integrate_samples(const Eigen::VectorXd& values) const {
  const Eigen::Index n = values.size();
  double sum = 0.0;
  for (Eigen::Index b = 0; b < n; b += kBlock) {
    const Eigen::Index len = std::min(kBlock, n - b);
    sum += weights_.segment(b, len).dot(values.segment(b, len));
  }
  Integral result{sum, 0.0};
  if (config_.backend == SphereBackend::monte_carlo) {
    const double N = static_cast<double>(n);
    double ss = 0.0;
    for (Eigen::Index q = 0; q < n; ++q) {
      const double v = N * weights_(q) * values(q) - sum;
      ss += v * v;
    }
    result.standard_error = std::sqrt(ss / (N - 1.0) / N);
  }
  return result;
}

double SphereMeasure::exact_integral(const MultiPoly<double>& p) const { return exact_sphere_integral(ctx_, p); }

Integral SphereMeasure::integrate(const SphereFunction& f) const {
  if (config_.backend == SphereBackend::exact_monomial) {
    if (!f.polynomial) throw std::invalid_argument("the exact backend integrates polynomials only");
    return {exact_integral(*f.polynomial), 0.0};
  }
  return integrate_samples(sample(f));
}

Integral SphereMeasure::inner_product(const SphereFunction& f, const SphereFunction& h) const {
  if (config_.backend == SphereBackend::exact_monomial) {
    if (!f.polynomial || !h.polynomial) throw std::invalid_argument("the exact backend integrates polynomials only");
    return {exact_integral(*f.polynomial * *h.polynomial), 0.0};
  }
  Eigen::VectorXd values = sample(f).cwiseProduct(sample(h));
  return integrate_samples(values);
}

double SphereMeasure::lp_norm(const SphereFunction& f, double p) const {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
  if (config_.backend == SphereBackend::exact_monomial) {
    const double rounded = std::round(p);
    if (!f.polynomial || rounded != p || static_cast<long long>(rounded) % 2 != 0)
      throw std::invalid_argument("the exact backend computes L_p norms only for polynomials and even p");
    const double value = exact_integral(pow(*f.polynomial, static_cast<int>(rounded)));
    return std::pow(std::max(0.0, value), 1.0 / p);
  }
  Eigen::VectorXd values = sample(f).array().abs().pow(p).matrix();
  return std::pow(std::max(0.0, integrate_samples(values).value), 1.0 / p);
}

double lp_norm_sphere(const SphereMeasure& measure, const SphereFunction& f, double p) { return measure.lp_norm(f, p); }

std::string scheme_name(NodeScheme s) {
  return s == NodeScheme::uniform_random ? "uniform_random" : "generalized_spiral";
}

NodeScheme parse_scheme(const std::string& name) {
  if (name == "uniform_random" || name == "random") return NodeScheme::uniform_random;
  if (name == "generalized_spiral" || name == "spiral") return NodeScheme::generalized_spiral;
  throw std::invalid_argument("unknown node scheme '" + name + "'");
}

std::vector<Eigen::VectorXd> node_set(int d, int count, NodeScheme scheme, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("node count must be at least 1");
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  if (scheme == NodeScheme::uniform_random) {
    Eigen::MatrixXd pts = uniform_sphere_points(d, static_cast<std::size_t>(count), seed);
    for (int j = 0; j < count; ++j) out.emplace_back(pts.col(j));
    return out;
  }
  if (d == 2) {
    for (int j = 0; j < count; ++j) {
      const double a = 2.0 * std::numbers::pi * j / count;
      out.emplace_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
    return out;
  }
  if (d != 3) throw std::invalid_argument("the generalized spiral is defined for d = 2 and d = 3 only");
  if (count == 1) {
    out.emplace_back(Eigen::Vector3d(0.0, 0.0, 1.0));
    return out;
  }
  // Saff-Kuijlaars: heights h_k equally spaced in [-1, 1], azimuth advanced by
  // 3.6 / sqrt(N (1 - h_k^2)).
  double phi = 0.0;
  for (int k = 0; k < count; ++k) {
    const double h = -1.0 + 2.0 * k / (count - 1);
    const double r = std::sqrt(std::max(0.0, 1.0 - h * h));
    if (k == 0 || k == count - 1)
      phi = 0.0;
    else
      phi = std::fmod(phi + 3.6 / std::sqrt(static_cast<double>(count)) / r, 2.0 * std::numbers::pi);
    Eigen::Vector3d v(r * std::cos(phi), r * std::sin(phi), h);
    out.emplace_back(v.normalized());
  }
  return out;
}

}  // namespace dunkl
