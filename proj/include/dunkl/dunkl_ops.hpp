// Dunkl operators, the Dunkl Laplacian and the intertwining operator V_kappa.
#ifndef DUNKL_DUNKL_OPS_HPP
#define DUNKL_DUNKL_OPS_HPP

#include "dunkl/errors.hpp"
#include "dunkl/function1d.hpp"
#include "dunkl/multipoly.hpp"
#include "dunkl/reflection.hpp"

#include <optional>
#include <vector>

namespace dunkl {

/// R, G and kappa bundled together with the derived constants. Construction
/// validates kappa against G and enforces lambda_kappa > 0.
template <typename Scalar>
class DunklContext {
 public:
  DunklContext(RootSystem<Scalar> R, ReflectionGroup<Scalar> G, MultiplicityFunction<Scalar> kappa)
      : root_system_(std::move(R)), group_(std::move(G)), kappa_(std::move(kappa)) {
    kappa_ = validate_multiplicity(root_system_, group_, kappa_.values);
    constants_ = dunkl::constants(root_system_, kappa_);
    for (const auto& v : root_system_.positive) {
      reflections_.push_back(reflection_matrix(v));
      forms_.push_back(MultiPoly<Scalar>::linear_form(v));
    }
  }

  /// Builtin family with one kappa value per root orbit.
  static DunklContext builtin(Family family, int param, const std::vector<Scalar>& orbit_values,
                              std::size_t group_cap = kDefaultGroupCap) {
    auto R = builtin_root_system<Scalar>(family, param);
    auto G = generate_group(R, group_cap);
    auto k = multiplicity_from_orbits(R, G, orbit_values);
    return DunklContext(std::move(R), std::move(G), std::move(k));
  }

  int dimension() const { return root_system_.dimension; }
  const RootSystem<Scalar>& root_system() const { return root_system_; }
  const ReflectionGroup<Scalar>& group() const { return group_; }
  const MultiplicityFunction<Scalar>& kappa() const { return kappa_; }
  const DunklConstants<Scalar>& constants() const { return constants_; }
  const Scalar& lambda_kappa() const { return constants_.lambda_kappa; }
  const Scalar& gamma_kappa() const { return constants_.gamma_kappa; }
  const std::vector<MatrixX<Scalar>>& reflections() const { return reflections_; }
  const std::vector<MultiPoly<Scalar>>& linear_forms() const { return forms_; }

  /// kappa per coordinate axis when every positive root with kappa > 0 is a
  /// multiple of a distinct coordinate vector (Z_2^d and its subsystems);
  /// axes without a root get 0. nullopt otherwise.
  std::optional<std::vector<Scalar>> coordinate_kappa() const {
    const int d = dimension();
    std::vector<Scalar> per_axis(d, Scalar(0));
    std::vector<bool> used(d, false);
    for (std::size_t r = 0; r < root_system_.positive.size(); ++r) {
      if (kappa_.values[r] == Scalar(0)) continue;
      const auto& v = root_system_.positive[r];
      int axis = -1;
      for (int i = 0; i < d; ++i) {
        if (v(i) == Scalar(0)) continue;
        if (axis >= 0) return std::nullopt;
        axis = i;
      }
      if (axis < 0 || used[axis]) return std::nullopt;
      used[axis] = true;
      per_axis[axis] = kappa_.values[r];
    }
    return per_axis;
  }

  /// True when V_kappa has an explicit realization here (kappa = 0 or Z_2^d).
  bool has_explicit_intertwiner() const { return kappa_.is_zero() || coordinate_kappa().has_value(); }

  template <typename Other>
  DunklContext<Other> cast() const {
    return DunklContext<Other>(root_system_.template cast<Other>(), group_.template cast<Other>(),
                               kappa_.template cast<Other>());
  }

 private:
  RootSystem<Scalar> root_system_;
  ReflectionGroup<Scalar> group_;
  MultiplicityFunction<Scalar> kappa_;
  DunklConstants<Scalar> constants_{};
  std::vector<MatrixX<Scalar>> reflections_;
  std::vector<MultiPoly<Scalar>> forms_;
};

/// D_i f = df/dx_i + sum_{v in R+} kappa(v) v_i (f - f o s_v) / <v, x>, i 0-based.
template <typename Scalar>
MultiPoly<Scalar> dunkl_apply(const DunklContext<Scalar>& ctx, int i, const MultiPoly<Scalar>& f) {
  if (f.dimension() != ctx.dimension()) throw DimensionMismatch("polynomial and context dimensions differ");
  MultiPoly<Scalar> result = partial_derivative(f, i);
  const auto& R = ctx.root_system();
  for (std::size_t r = 0; r < R.positive.size(); ++r) {
    const Scalar& k = ctx.kappa().values[r];
    const Scalar& vi = R.positive[r](i);
    if (k == Scalar(0) || vi == Scalar(0)) continue;
    MultiPoly<Scalar> difference = f - substitute_linear(f, ctx.reflections()[r]);
    if (difference.is_zero()) continue;
    result += divide_by_linear_form(difference, R.positive[r]) * Scalar(k * vi);
  }
  return result;
}

/// Sum over i of D_i^2.
template <typename Scalar>
MultiPoly<Scalar> dunkl_laplacian(const DunklContext<Scalar>& ctx, const MultiPoly<Scalar>& f) {
  MultiPoly<Scalar> result(f.dimension(), f.degree_cap());
  for (int i = 0; i < ctx.dimension(); ++i) result += dunkl_apply(ctx, i, dunkl_apply(ctx, i, f));
  return result;
}

/// V_kappa on the Z_2^d family: x^alpha -> prod_i b_{kappa_i}(alpha_i) x^alpha with
/// b_k(2n) = (1/2)_n / (k+1/2)_n and b_k(2n+1) = (1/2)_{n+1} / (k+1/2)_{n+1}.
template <typename Scalar>
Scalar intertwiner_factor(const Scalar& kappa, int exponent) {
  const int n = (exponent + 1) / 2;
  const Scalar half = ScalarTraits<Scalar>::from_ratio(1, 2);
  return pochhammer(half, n) / pochhammer(Scalar(kappa + half), n);
}

/// The intertwining operator. Identity for kappa = 0, monomial scaling for
/// Z_2^d; other groups throw UnsupportedGroup.
template <typename Scalar>
MultiPoly<Scalar> intertwine(const DunklContext<Scalar>& ctx, const MultiPoly<Scalar>& f) {
  if (f.dimension() != ctx.dimension()) throw DimensionMismatch("polynomial and context dimensions differ");
  if (ctx.kappa().is_zero()) return f;
  auto per_axis = ctx.coordinate_kappa();
  if (!per_axis)
    throw UnsupportedGroup("no explicit intertwining operator for the " + family_name(ctx.root_system().family) +
                           " family with nonzero kappa");
  typename MultiPoly<Scalar>::Terms terms;
  for (const auto& [m, c] : f.terms()) {
    Scalar factor = c;
    for (int i = 0; i < ctx.dimension(); ++i)
      if ((*per_axis)[i] != Scalar(0) && m[i] > 0) factor *= intertwiner_factor((*per_axis)[i], m[i]);
    terms.emplace(m, factor);
  }
  return MultiPoly<Scalar>(f.dimension(), std::move(terms), f.degree_cap());
}

inline constexpr int kDefaultKernelOrder = 24;

/// The kernel translate K(x, y) = V_kappa[g(<x, .>)](y) for kappa = 0 or the
/// Z_2^d family. For Z_2^d it is evaluated through the product integral
///
///   \int_{[-1,1]^d} g(sum_i x_i y_i t_i) prod_i dnu_{kappa_i}(t_i),
///
/// dnu_k(t) = c'_k (1+t)(1-t^2)^{k-1} dt a probability measure (Gauss-Jacobi
/// with alpha = k-1, beta = k, `order` nodes per axis) and nu_0 the unit mass
/// at t = 1. The node set is built once per instance.
class KernelTranslate {
 public:
  KernelTranslate(const DunklContext<double>& ctx, Function1D g, int order = kDefaultKernelOrder);

  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  const Function1D& function() const { return g_; }
  int dimension() const { return dimension_; }
  /// Number of product nodes (1 for kappa = 0).
  std::size_t node_count() const { return static_cast<std::size_t>(weights_.size()); }

 private:
  Function1D g_;
  int dimension_ = 0;
  // Column q holds the per-axis nodes t_q; kappa = 0 axes are fixed at 1.
  Eigen::MatrixXd nodes_;
  Eigen::VectorXd weights_;
};

/// One-off evaluation of V_kappa[g(<x, .>)](y); x and y must be unit vectors.
double kernel_translate_eval(const DunklContext<double>& ctx, const Function1D& g, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y, int order = kDefaultKernelOrder);

}  // namespace dunkl

#endif  // DUNKL_DUNKL_OPS_HPP
