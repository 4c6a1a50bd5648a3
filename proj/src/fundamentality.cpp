#include "dunkl/fundamentality.hpp"
#include "dunkl/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dunkl {

namespace {

void require_sampled(const SphereMeasure& measure) {
  if (measure.nodes().cols() == 0)
    throw std::invalid_argument("this check needs a tensor_quadrature or monte_carlo measure");
}

double lambda_n(const Function1D& bound, double lambda, int n) {
  return coefficient_profile(bound, lambda, n).entries.back().value;
}

double weighted_dot(const SphereMeasure& measure, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return measure.weights().cwiseProduct(a).dot(b);
}

}  // namespace

int kernel_order_for(const Function1D& g, int fallback) {
  // Degrees of Gegenbauer nodes do not depend on the parameter they get bound to.
  if (auto deg = (g.is_bound() ? g : g.with_lambda(1.0)).polynomial_degree()) return std::max(1, std::min(fallback, *deg / 2 + 1));
  return fallback;
}

std::vector<double> funk_hecke_residuals(const DunklContext<double>& ctx, const SphereMeasure& measure,
                                         const Function1D& g, int n, const std::vector<MultiPoly<double>>& Ys,
                                         const std::vector<Eigen::VectorXd>& x_samples, int kernel_order) {
  require_sampled(measure);
  if (n < 0) throw std::invalid_argument("degree must be nonnegative");
  const double lambda = ctx.lambda_kappa();
  const KernelTranslate K(ctx, g, kernel_order > 0 ? kernel_order : kernel_order_for(g));
  const double coefficient = lambda_n(K.function(), lambda, n);

  std::vector<Eigen::VectorXd> values;
  std::vector<double> scales;
  for (const auto& Y : Ys) {
    if (Y.dimension() != ctx.dimension()) throw DimensionMismatch("harmonic and context dimensions differ");
    values.push_back(measure.sample(SphereFunction::from_polynomial(Y)));
    scales.push_back(std::max(1.0, std::sqrt(std::max(0.0, weighted_dot(measure, values.back(), values.back())))));
  }
  std::vector<double> residuals(Ys.size(), 0.0);
  for (const auto& x : x_samples) {
    const Eigen::VectorXd kernel = measure.sample(SphereFunction::from_kernel(K, x));
    for (std::size_t i = 0; i < Ys.size(); ++i) {
      const double lhs = weighted_dot(measure, kernel, values[i]);
      const double r = std::abs(lhs - coefficient * eval(Ys[i], x)) / scales[i];
      residuals[i] = std::max(residuals[i], r);
    }
  }
  return residuals;
}

double funk_hecke_residual(const DunklContext<double>& ctx, const SphereMeasure& measure, const Function1D& g, int n,
                           const MultiPoly<double>& Y, const std::vector<Eigen::VectorXd>& x_samples,
                           int kernel_order) {
  return funk_hecke_residuals(ctx, measure, g, n, {Y}, x_samples, kernel_order).front();
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::fundamental_up_to_n: return "FUNDAMENTAL_UP_TO_N";
    case Verdict::not_fundamental: return "NOT_FUNDAMENTAL";
    case Verdict::indeterminate: return "INDETERMINATE";
  }
  return "INDETERMINATE";
}

namespace {

bool same_profile(const CoefficientProfile& a, const CoefficientProfile& b) {
  if (a.lambda != b.lambda || a.epsilon != b.epsilon || a.quadrature_nodes != b.quadrature_nodes ||
      a.entries.size() != b.entries.size())
    return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const auto &x = a.entries[i], &y = b.entries[i];
    if (x.n != y.n || x.value != y.value || x.error_bound != y.error_bound || x.scale != y.scale ||
        x.method != y.method || x.flag != y.flag)
      return false;
  }
  return true;
}

}  // namespace

bool same_verdict(const FundamentalityReport& a, const FundamentalityReport& b) {
  if (a.g_descriptions != b.g_descriptions || a.lambda_kappa != b.lambda_kappa || a.truncation != b.truncation ||
      a.epsilon != b.epsilon || a.verdict != b.verdict || a.witnesses != b.witnesses ||
      a.indeterminate != b.indeterminate || a.funk_hecke_verifiable != b.funk_hecke_verifiable ||
      a.profiles.size() != b.profiles.size() || !same_profile(a.aggregate, b.aggregate))
    return false;
  for (std::size_t i = 0; i < a.profiles.size(); ++i)
    if (!same_profile(a.profiles[i], b.profiles[i])) return false;
  return true;
}

FundamentalityReport union_fundamental(const DunklContext<double>& ctx, const std::vector<Function1D>& gs, double p,
                                       int N, double epsilon) {
  if (gs.empty()) throw std::invalid_argument("at least one function is required");
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must lie in [1, inf)");
  if (N < 0) throw std::invalid_argument("truncation N must be nonnegative");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");

  FundamentalityReport report;
  report.lambda_kappa = ctx.lambda_kappa();
  report.truncation = N;
  report.p = p;
  report.epsilon = epsilon;
  report.funk_hecke_verifiable = ctx.has_explicit_intertwiner();
  for (const auto& g : gs) {
    const Function1D bound = g.with_lambda(report.lambda_kappa);
    report.g_descriptions.push_back(bound.describe());
    report.profiles.push_back(coefficient_profile(bound, report.lambda_kappa, N, epsilon));
  }

  CoefficientProfile& agg = report.aggregate;
  agg.lambda = report.lambda_kappa;
  agg.epsilon = epsilon;
  for (const auto& prof : report.profiles) agg.quadrature_nodes = std::max(agg.quadrature_nodes, prof.quadrature_nodes);
  for (int n = 0; n <= N; ++n) {
    CoefficientEntry e;
    e.n = n;
    e.scale = 0.0;
    e.method = CoefficientMethod::analytic;
    bool all_zero = true, any_nonzero = false;
    for (const auto& prof : report.profiles) {
      const CoefficientEntry& m = prof.entries[static_cast<std::size_t>(n)];
      e.value += std::abs(m.value);
      e.error_bound += m.error_bound;
      e.scale += m.scale;
      if (m.method == CoefficientMethod::quadrature) e.method = CoefficientMethod::quadrature;
      all_zero = all_zero && m.flag == ZeroFlag::zero;
      any_nonzero = any_nonzero || m.flag == ZeroFlag::nonzero;
    }
    e.flag = all_zero ? ZeroFlag::zero : any_nonzero ? ZeroFlag::nonzero : ZeroFlag::indeterminate;
    agg.entries.push_back(e);
  }

  report.witnesses = agg.degrees_flagged(ZeroFlag::zero);
  report.indeterminate = agg.degrees_flagged(ZeroFlag::indeterminate);
  if (!report.witnesses.empty())
    report.verdict = Verdict::not_fundamental;
  else if (!report.indeterminate.empty())
    report.verdict = Verdict::indeterminate;
  else
    report.verdict = Verdict::fundamental_up_to_n;
  return report;
}

FundamentalityReport is_fundamental(const DunklContext<double>& ctx, const Function1D& g, double p, int N,
                                    double epsilon) {
  return union_fundamental(ctx, {g}, p, N, epsilon);
}

DensityReport density_demo(const DunklContext<double>& ctx, const SphereMeasure& measure, const Function1D& g, int m,
                           const std::vector<int>& node_counts, const DensityOptions& options) {
  require_sampled(measure);
  if (m < 0) throw std::invalid_argument("target degree must be nonnegative");
  if (node_counts.empty()) throw std::invalid_argument("at least one node count is required");
  const int d = ctx.dimension();
  const double lambda = ctx.lambda_kappa();
  const KernelTranslate K(ctx, g, options.kernel_order > 0 ? options.kernel_order : kernel_order_for(g));

  DensityReport report;
  report.target_degree = m;
  report.lambda_m = lambda_n(K.function(), lambda, m);
  report.node_counts = node_counts;
  report.seed = options.seed;
  const NodeScheme scheme =
      options.scheme.value_or(d <= 3 ? NodeScheme::generalized_spiral : NodeScheme::uniform_random);
  report.scheme = scheme_name(scheme);

  MultiPoly<double> Y = harmonic_elements(ctx, m).front();
  report.target = to_string(Y);
  Eigen::VectorXd target = measure.sample(SphereFunction::from_polynomial(Y));
  report.target_norm = std::sqrt(weighted_dot(measure, target, target));
  if (!(report.target_norm > 0.0)) throw std::runtime_error("target harmonic has zero norm");

  for (int c : node_counts) {
    if (c < 1) throw std::invalid_argument("node counts must be positive");
    const auto xs = node_set(d, c, scheme, options.seed);
    Eigen::MatrixXd kernels(c, measure.nodes().cols());
    Eigen::VectorXd b(c);
    for (int j = 0; j < c; ++j) {
      kernels.row(j) = measure.sample(SphereFunction::from_kernel(K, xs[j])).transpose();
      b(j) = report.lambda_m * eval(Y, xs[j]) / report.target_norm;
    }
    const Eigen::MatrixXd gram = kernels * measure.weights().asDiagonal() * kernels.transpose();
    const double ridge = options.ridge < 0.0 ? 1e-10 * gram.trace() / c : options.ridge;
    Eigen::VectorXd a;
    if (ridge == 0.0) {
      Eigen::LLT<Eigen::MatrixXd> llt(gram);
      if (llt.info() != Eigen::Success)
        throw std::runtime_error("Gram matrix is numerically singular at ridge 0; use a positive ridge");
      a = llt.solve(b);
    } else {
      a = (gram + ridge * Eigen::MatrixXd::Identity(c, c)).ldlt().solve(b);
    }
    const double squared = 1.0 - 2.0 * a.dot(b) + a.dot(gram * a);
    report.residuals.push_back(std::sqrt(std::max(0.0, squared)));
    report.ridges.push_back(ridge);
  }
  return report;
}

double kernel_symmetry_check(const DunklContext<double>& ctx, const Function1D& g,
                             const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs,
                             int kernel_order) {
  const KernelTranslate K(ctx, g, kernel_order);
  double worst = 0.0;
  for (const auto& [x, y] : pairs) worst = std::max(worst, std::abs(K(x, y) - K(y, x)));
  return worst;
}

double operator_norm_check(const DunklContext<double>& ctx, const SphereMeasure& measure, const Function1D& g,
                           double p, const std::vector<Eigen::VectorXd>& x_samples, int kernel_order,
                           int segment_nodes) {
  require_sampled(measure);
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must lie in [1, inf)");
  const double lambda = ctx.lambda_kappa();
  const KernelTranslate K(ctx, g, kernel_order > 0 ? kernel_order : kernel_order_for(g));
  const double denominator = lp_norm_segment(K.function(), p, lambda, gauss_jacobi_rule(segment_nodes, lambda));
  if (!(denominator > 0.0)) throw std::invalid_argument("g has zero norm on [-1, 1]");
  double worst = 0.0;
  for (const auto& x : x_samples)
    worst = std::max(worst, measure.lp_norm(SphereFunction::from_kernel(K, x), p) / denominator);
  return worst;
}

}  // namespace dunkl
