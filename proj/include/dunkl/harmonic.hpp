// kappa-spherical harmonics: bases of the kernel of the Dunkl Laplacian on
// homogeneous polynomials of degree n, with their Gram matrices.
#ifndef DUNKL_HARMONIC_HPP
#define DUNKL_HARMONIC_HPP

#include "dunkl/dunkl_ops.hpp"
#include "dunkl/sphere.hpp"

#include <Eigen/SVD>

#include <map>
#include <string>
#include <vector>

namespace dunkl {

inline constexpr double kHarmonicRankTolerance = 1e-10;

template <typename Scalar>
struct HarmonicBasis {
  int degree = 0;
  std::vector<MultiPoly<Scalar>> elements;
  // gram(i, j) = <elements[i], elements[j]>_{kappa, S^{d-1}}
  MatrixX<Scalar> gram;
  // "exact_monomial" or "tensor_quadrature"
  std::string gram_method;

  std::size_t size() const { return elements.size(); }
};

/// dim P_n - dim P_{n-2} = C(n+d-1, d-1) - C(n+d-3, d-1).
inline long long harmonic_dimension(int d, int n) {
  return homogeneous_dimension(d, n) - homogeneous_dimension(d, n - 2);
}

/// Matrix of Delta_kappa : P_n -> P_{n-2}; columns follow monomials_of_degree(d, n),
/// rows monomials_of_degree(d, n - 2).
template <typename Scalar>
MatrixX<Scalar> laplacian_matrix(const DunklContext<Scalar>& ctx, int n) {
  const int d = ctx.dimension();
  const auto cols = monomials_of_degree(d, n);
  const auto rows = monomials_of_degree(d, n - 2);
  std::map<Monomial, Eigen::Index, GradedLexLess> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r) row_of.emplace(rows[r], static_cast<Eigen::Index>(r));
  MatrixX<Scalar> L = MatrixX<Scalar>::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const MultiPoly<Scalar> image = dunkl_laplacian(ctx, MultiPoly<Scalar>::monomial(cols[c]));
    for (const auto& [m, coeff] : image.terms()) L(row_of.at(m), static_cast<Eigen::Index>(c)) = coeff;
  }
  return L;
}

namespace detail {

// Reduced row echelon form in place; returns pivot columns. Exact scalars
// pivot on the first nonzero entry, floating scalars on the largest one and
// treat entries below `tol` as zero.
template <typename Scalar>
std::vector<Eigen::Index> rref(MatrixX<Scalar>& A, double tol) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < A.cols() && row < A.rows(); ++col) {
    Eigen::Index best = -1;
    if constexpr (ScalarTraits<Scalar>::is_exact) {
      for (Eigen::Index r = row; r < A.rows(); ++r)
        if (A(r, col) != Scalar(0)) {
          best = r;
          break;
        }
    } else {
      double best_abs = tol;
      for (Eigen::Index r = row; r < A.rows(); ++r)
        if (std::abs(A(r, col)) > best_abs) {
          best_abs = std::abs(A(r, col));
          best = r;
        }
    }
    if (best < 0) continue;
    A.row(row).swap(A.row(best));
    const Scalar inv = Scalar(1) / A(row, col);
    A.row(row) *= inv;
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
      if (r == row || A(r, col) == Scalar(0)) continue;
      const Scalar f = A(r, col);
      A.row(r) -= f * A.row(row);
      if constexpr (!ScalarTraits<Scalar>::is_exact) A(r, col) = 0.0;
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// Nullspace basis of laplacian_matrix(ctx, n): one element per free column of
/// the reduced echelon form, with coefficient 1 on that column's monomial.
/// Exact elimination in rational mode; in floating mode entries below
/// 1e-10 times the largest singular value count as zero and the echelon rank
/// is cross-checked against the SVD rank.
template <typename Scalar>
std::vector<MultiPoly<Scalar>> harmonic_elements(const DunklContext<Scalar>& ctx, int n) {
  if (n < 0) throw std::invalid_argument("harmonic degree must be nonnegative");
  const int d = ctx.dimension();
  const auto cols = monomials_of_degree(d, n);
  std::vector<MultiPoly<Scalar>> out;
  if (n < 2) {
    for (const auto& m : cols) out.push_back(MultiPoly<Scalar>::monomial(m));
    return out;
  }
  MatrixX<Scalar> L = laplacian_matrix(ctx, n);
  double tol = 0.0;
  if constexpr (!ScalarTraits<Scalar>::is_exact) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(L);
    const auto& s = svd.singularValues();
    tol = s.size() ? kHarmonicRankTolerance * s(0) : 0.0;
    Eigen::Index svd_rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > tol) ++svd_rank;
    auto pivots = detail::rref(L, tol);
    if (static_cast<Eigen::Index>(pivots.size()) != svd_rank)
      throw std::runtime_error("rank of the Dunkl Laplacian is numerically ambiguous at degree " + std::to_string(n));
    std::vector<bool> is_pivot(cols.size(), false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < cols.size(); ++f) {
      if (is_pivot[f]) continue;
      MultiPoly<Scalar> P = MultiPoly<Scalar>::monomial(cols[f]);
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        const Scalar c = -L(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f));
        if (std::abs(c) > tol) P.accumulate(cols[pivots[r]], c);
      }
      out.push_back(std::move(P));
    }
  } else {
    auto pivots = detail::rref(L, tol);
    std::vector<bool> is_pivot(cols.size(), false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < cols.size(); ++f) {
      if (is_pivot[f]) continue;
      MultiPoly<Scalar> P = MultiPoly<Scalar>::monomial(cols[f]);
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        const Scalar c = -L(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f));
        if (c != Scalar(0)) P.accumulate(cols[pivots[r]], c);
      }
      out.push_back(std::move(P));
    }
  }
  return out;
}

/// Gram matrix of polynomials in L_2(sigma_kappa): closed form when available,
/// otherwise tensor quadrature.
template <typename Scalar>
MatrixX<Scalar> gram_matrix(const DunklContext<Scalar>& ctx, const std::vector<MultiPoly<Scalar>>& ps,
                            std::string* method = nullptr) {
  const Eigen::Index k = static_cast<Eigen::Index>(ps.size());
  MatrixX<Scalar> G(k, k);
  if (has_exact_backend(ctx)) {
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) G(i, j) = G(j, i) = exact_sphere_integral(ctx, ps[i] * ps[j]);
    if (method) *method = "exact_monomial";
    return G;
  }
  const DunklContext<double> numeric = ctx.template cast<double>();
  SphereMeasure measure(numeric);
  std::vector<SphereFunction> fs;
  for (const auto& p : ps) fs.push_back(SphereFunction::from_polynomial(p.template cast<double>()));
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) G(i, j) = G(j, i) = Scalar(measure.inner_product(fs[i], fs[j]).value);
  if (method) *method = "tensor_quadrature";
  return G;
}

template <typename Scalar>
HarmonicBasis<Scalar> harmonic_basis(const DunklContext<Scalar>& ctx, int n) {
  HarmonicBasis<Scalar> basis;
  basis.degree = n;
  basis.elements = harmonic_elements(ctx, n);
  basis.gram = gram_matrix(ctx, basis.elements, &basis.gram_method);
  return basis;
}

}  // namespace dunkl

#endif  // DUNKL_HARMONIC_HPP
