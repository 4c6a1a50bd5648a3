#include "dunkl/dunkl_ops.hpp"
#include "dunkl/gegenbauer.hpp"

#include <cmath>

namespace dunkl {

namespace {

void require_unit(const Eigen::VectorXd& x, const char* name) {
  if (std::abs(x.norm() - 1.0) > 1e-12) throw std::invalid_argument(std::string(name) + " must be a unit vector");
}

}  // namespace

KernelTranslate::KernelTranslate(const DunklContext<double>& ctx, Function1D g, int order)
    : g_(g.with_lambda(ctx.lambda_kappa())), dimension_(ctx.dimension()) {
  if (order < 1) throw std::invalid_argument("kernel quadrature order must be at least 1");
  const int d = dimension_;
  if (ctx.kappa().is_zero()) {
    nodes_ = Eigen::MatrixXd::Ones(d, 1);
    weights_ = Eigen::VectorXd::Ones(1);
    return;
  }
  auto per_axis = ctx.coordinate_kappa();
  if (!per_axis)
    throw UnsupportedGroup("kernel translates need kappa = 0 or the Z_2^d family (got " +
                           family_name(ctx.root_system().family) + ")");

  // Tensor product over the axes with kappa_i > 0; the rest sit at t = 1.
  nodes_ = Eigen::MatrixXd::Ones(d, 1);
  weights_ = Eigen::VectorXd::Ones(1);
  for (int i = 0; i < d; ++i) {
    const double k = (*per_axis)[i];
    if (k == 0.0) continue;
    JacobiRule axis = gauss_jacobi(order, k - 1.0, k);
    axis.weights /= axis.weights.sum();
    const Eigen::Index q = weights_.size();
    Eigen::MatrixXd nodes(d, q * order);
    Eigen::VectorXd weights(q * order);
    for (int a = 0; a < order; ++a) {
      nodes.middleCols(a * q, q) = nodes_;
      nodes.row(i).segment(a * q, q).setConstant(axis.nodes(a));
      weights.segment(a * q, q) = weights_ * axis.weights(a);
    }
    nodes_ = std::move(nodes);
    weights_ = std::move(weights);
  }
}

double KernelTranslate::operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  if (x.size() != dimension_ || y.size() != dimension_) throw DimensionMismatch("kernel point has wrong dimension");
  require_unit(x, "x");
  require_unit(y, "y");
  const Eigen::VectorXd xy = x.cwiseProduct(y);
  double sum = 0.0;
  for (Eigen::Index q = 0; q < weights_.size(); ++q) {
    double t = std::clamp(xy.dot(nodes_.col(q)), -1.0, 1.0);
    sum += weights_(q) * g_(t);
  }
  return sum;
}

double kernel_translate_eval(const DunklContext<double>& ctx, const Function1D& g, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y, int order) {
  return KernelTranslate(ctx, g, order)(x, y);
}

}  // namespace dunkl
