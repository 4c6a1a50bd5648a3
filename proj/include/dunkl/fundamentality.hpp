// The kernel-translate family {K(x, .) = V_kappa[g(<x, .>)] : x in S^{d-1}}:
// the Funk-Hecke identity, the fundamentality verdict read off Lambda_n(g),
// its union form, and a least-squares density demonstration.
#ifndef DUNKL_FUNDAMENTALITY_HPP
#define DUNKL_FUNDAMENTALITY_HPP

#include "dunkl/dunkl_ops.hpp"
#include "dunkl/gegenbauer.hpp"
#include "dunkl/sphere.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace dunkl {

inline constexpr int kDefaultTruncation = 20;

/// Per-axis Gauss-Jacobi order for kernel translates of g: the smallest exact
/// order for polynomials, `fallback` otherwise.
int kernel_order_for(const Function1D& g, int fallback = kDefaultKernelOrder);

/// max over x of |\int K(x, y) Y(y) d sigma_kappa(y) - Lambda_n(g) Y(x)| / max(1, ||Y||_{kappa,2}).
/// The measure must carry nodes (tensor quadrature or Monte Carlo).
/// `kernel_order` = 0 picks kernel_order_for(g).
double funk_hecke_residual(const DunklContext<double>& ctx, const SphereMeasure& measure, const Function1D& g, int n,
                           const MultiPoly<double>& Y, const std::vector<Eigen::VectorXd>& x_samples,
                           int kernel_order = 0);

/// The same residual for several harmonics of degree n at once; the kernel
/// is sampled once per x.
std::vector<double> funk_hecke_residuals(const DunklContext<double>& ctx, const SphereMeasure& measure,
                                         const Function1D& g, int n, const std::vector<MultiPoly<double>>& Ys,
                                         const std::vector<Eigen::VectorXd>& x_samples, int kernel_order = 0);

enum class Verdict { fundamental_up_to_n, not_fundamental, indeterminate };

std::string verdict_name(Verdict v);

struct FundamentalityReport {
  std::vector<std::string> g_descriptions;
  double lambda_kappa = 0.0;
  int truncation = kDefaultTruncation;
  double p = 2.0;  // recorded only
  double epsilon = kDefaultZeroTolerance;
  // One profile per function.
  std::vector<CoefficientProfile> profiles;
  // Per-degree sum of |Lambda_n(g_i)| and error bounds, with the union flags:
  // zero when every member is zero, nonzero when some member is nonzero.
  CoefficientProfile aggregate;
  Verdict verdict = Verdict::indeterminate;
  // Degrees flagged zero in the aggregate (empty unless NOT_FUNDAMENTAL).
  std::vector<int> witnesses;
  // Degrees the zero test could not decide.
  std::vector<int> indeterminate;
  // Whether the Funk-Hecke identity can be checked numerically for this group.
  bool funk_hecke_verifiable = false;
};

/// Everything except the recorded p agrees.
bool same_verdict(const FundamentalityReport& a, const FundamentalityReport& b);

/// Union criterion: the family generated by g_1, ..., g_s is fundamental up
/// to degree N iff no aggregate entry is flagged zero. A zero entry decides
/// NOT_FUNDAMENTAL even when other degrees are indeterminate.
FundamentalityReport union_fundamental(const DunklContext<double>& ctx, const std::vector<Function1D>& gs, double p,
                                       int N = kDefaultTruncation, double epsilon = kDefaultZeroTolerance);

/// union_fundamental with a single function.
FundamentalityReport is_fundamental(const DunklContext<double>& ctx, const Function1D& g, double p,
                                    int N = kDefaultTruncation, double epsilon = kDefaultZeroTolerance);

struct DensityOptions {
  // Absolute ridge; negative selects 1e-10 * trace(Gram) / size per node count.
  double ridge = -1.0;
  // Spiral for d <= 3, uniform random otherwise, unless set.
  std::optional<NodeScheme> scheme;
  std::uint64_t seed = kDefaultSeed;
  int kernel_order = 0;
};

struct DensityReport {
  int target_degree = 0;
  std::string target;  // Y_m before normalization, in polynomial text form
  double target_norm = 0.0;
  double lambda_m = 0.0;
  std::vector<int> node_counts;
  // ||sum_j a_j K(x_j, .) - Y_m||_{kappa,2} / ||Y_m||_{kappa,2}
  std::vector<double> residuals;
  std::vector<double> ridges;
  std::string scheme;
  std::uint64_t seed = kDefaultSeed;
};

/// Regularized L_2 projection of the normalized first basis harmonic of
/// degree m onto span{K(x_j, .)} for each node count. Gram entries come from
/// the measure's nodes; the right side is Lambda_m(g) Y_m(x_j).
DensityReport density_demo(const DunklContext<double>& ctx, const SphereMeasure& measure, const Function1D& g, int m,
                           const std::vector<int>& node_counts, const DensityOptions& options = {});

/// max |K(x, y) - K(y, x)| over the pairs.
double kernel_symmetry_check(const DunklContext<double>& ctx, const Function1D& g,
                             const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs,
                             int kernel_order = kDefaultKernelOrder);

/// max over x of ||K(x, .)||_{kappa,p,S} / ||g||_{lambda_kappa,p,[-1,1]}.
/// `kernel_order` = 0 picks kernel_order_for(g).
double operator_norm_check(const DunklContext<double>& ctx, const SphereMeasure& measure, const Function1D& g,
                           double p, const std::vector<Eigen::VectorXd>& x_samples, int kernel_order = 0,
                           int segment_nodes = 512);

}  // namespace dunkl

#endif  // DUNKL_FUNDAMENTALITY_HPP
