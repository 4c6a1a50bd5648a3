// Gegenbauer polynomials, Gauss-Jacobi quadrature and the normalized
// Gegenbauer coefficients
//
//   Lambda_{n,lambda}(g) = c_lambda / C_n^lambda(1) * \int g C_n^lambda (1-t^2)^{lambda-1/2} dt
//
// together with the weighted L_p norms on [-1, 1].
#ifndef DUNKL_GEGENBAUER_HPP
#define DUNKL_GEGENBAUER_HPP

#include "dunkl/function1d.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace dunkl {

inline constexpr double kDefaultZeroTolerance = 1e-9;

/// C_n^lambda(t) by the three-term recurrence.
double gegenbauer_eval(int n, double lambda, double t);

/// C_n^lambda(1) = (2 lambda)_n / n!.
double gegenbauer_at_one(int n, double lambda);

/// c_lambda = (\int_{-1}^1 (1-t^2)^{lambda-1/2} dt)^{-1} = Gamma(lambda+1) / (sqrt(pi) Gamma(lambda+1/2)).
double c_lambda(double lambda);

/// Gauss rule for the Jacobi weight (1-t)^alpha (1+t)^beta on [-1, 1]
/// (Golub-Welsch). Exact for polynomials of degree <= 2m-1.
struct JacobiRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  double alpha = 0.0;
  double beta = 0.0;
};
JacobiRule gauss_jacobi(int m, double alpha, double beta);

/// Gauss rule for the Gegenbauer weight (1-t^2)^{lambda-1/2}; the weights sum
/// to 1 / c_lambda.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  double lambda = 0.0;
  int exact_degree = 0;

  int size() const { return static_cast<int>(nodes.size()); }
};
QuadratureRule gauss_jacobi_rule(int m, double lambda);

enum class CoefficientMethod { quadrature, analytic };

struct CoefficientEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  // Magnitude the zero test is measured against.
  double scale = 1.0;
  CoefficientMethod method = CoefficientMethod::quadrature;
};

/// Quadrature value of Lambda_{n,lambda}(g) with `rule`; error_bound is the
/// difference to the same formula on a rule with twice the nodes, and scale
/// is max(1, ||g||_{lambda,1}).
CoefficientEstimate lambda_coefficient(const Function1D& g, int n, double lambda, const QuadratureRule& rule);

/// Lambda_{n,lambda}(t^k) = lambda k! / (2^k j! (lambda)_{n+j+1}) with k = n + 2j; zero otherwise.
double monomial_lambda_coefficient(int k, int n, double lambda);

/// Term-by-term evaluation from the power series of g (polynomials, exp,
/// cos, Gegenbauer, their sums and parity parts). Coefficients forced to zero
/// by degree or parity come out as exact zeros, and tiny genuine
/// coefficients keep full relative accuracy. scale is the sum of the
/// absolute contributions. Returns nullopt for step and table functions.
std::optional<CoefficientEstimate> lambda_coefficient_analytic(const Function1D& g, int n, double lambda);

enum class ZeroFlag { nonzero, zero, indeterminate };

std::string flag_name(ZeroFlag f);

/// Three-state zero test: ZERO when |value| and error_bound are both within
/// epsilon * scale, NONZERO when |value| exceeds epsilon * scale and the
/// error bound, INDETERMINATE otherwise.
ZeroFlag classify_coefficient(double value, double error_bound, double scale, double epsilon);

struct CoefficientEntry {
  int n = 0;
  double value = 0.0;
  double error_bound = 0.0;
  double scale = 1.0;
  CoefficientMethod method = CoefficientMethod::quadrature;
  ZeroFlag flag = ZeroFlag::indeterminate;

  bool is_zero() const { return flag == ZeroFlag::zero; }
};

struct CoefficientProfile {
  double lambda = 0.0;
  double epsilon = kDefaultZeroTolerance;
  int quadrature_nodes = 0;
  std::vector<CoefficientEntry> entries;

  std::vector<int> degrees_flagged(ZeroFlag flag) const;
};

enum class MethodPreference { automatic, quadrature };

/// Default rule size: max(64, 2(N + deg g) + 16) for polynomials,
/// max(256, 2N + 64) otherwise.
int default_quadrature_nodes(const Function1D& g, int N);

/// Lambda_n(g) for n = 0..N with zero flags. `m` = 0 selects the default
/// rule size. The analytic path is used whenever g admits it unless the
/// preference forces quadrature.
CoefficientProfile coefficient_profile(const Function1D& g, double lambda, int N,
                                       double epsilon = kDefaultZeroTolerance, int m = 0,
                                       MethodPreference preference = MethodPreference::automatic);

/// ||g||_{lambda,p,[-1,1]} = (c_lambda \int |g|^p (1-t^2)^{lambda-1/2} dt)^{1/p}.
double lp_norm_segment(const Function1D& g, double p, double lambda, const QuadratureRule& rule);

}  // namespace dunkl

#endif  // DUNKL_GEGENBAUER_HPP
