#include "dunkl/gegenbauer.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dunkl {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

void require_positive_lambda(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Gegenbauer parameter lambda must be positive");
}

// \int_{-1}^1 (1-t)^a (1+t)^b dt
double jacobi_mass(double a, double b) {
  return std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                  std::lgamma(a + b + 2.0));
}

}  // namespace

double gegenbauer_eval(int n, double lambda, double t) {
  require_positive_lambda(lambda);
  if (n < 0) throw std::invalid_argument("Gegenbauer degree must be nonnegative");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * lambda * t;
  for (int k = 2; k <= n; ++k) {
    double next = (2.0 * (k + lambda - 1.0) * t * cur - (k + 2.0 * lambda - 2.0) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gegenbauer_at_one(int n, double lambda) {
  require_positive_lambda(lambda);
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= (2.0 * lambda + k) / (k + 1.0);
  return r;
}

double c_lambda(double lambda) {
  require_positive_lambda(lambda);
  return std::exp(std::lgamma(lambda + 1.0) - std::lgamma(lambda + 0.5)) / std::sqrt(std::numbers::pi);
}

JacobiRule gauss_jacobi(int m, double alpha, double beta) {
  if (m < 1) throw std::invalid_argument("quadrature needs at least one node");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw std::invalid_argument("Jacobi exponents must exceed -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(m), sub(std::max(m - 1, 1));
  for (int k = 0; k < m; ++k) {
    if (k == 0)
      diag(k) = (beta - alpha) / (ab + 2.0);
    else
      diag(k) = (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
  }
  for (int k = 1; k < m; ++k) {
    double b;
    if (k == 1) {
      b = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * k + ab;
      b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(b);
  }
  JacobiRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  const double mass = jacobi_mass(alpha, beta);
  if (m == 1) {
    rule.nodes = Eigen::VectorXd::Constant(1, diag(0));
    rule.weights = Eigen::VectorXd::Constant(1, mass);
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(m - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Golub-Welsch eigen-solver did not converge");
  rule.nodes = solver.eigenvalues();
  rule.weights = mass * solver.eigenvectors().row(0).transpose().array().square();
  if (alpha == beta) {
    // Symmetric weight: enforce exact node/weight symmetry about 0.
    for (int i = 0, j = m - 1; i <= j; ++i, --j) {
      double x = 0.5 * (rule.nodes(j) - rule.nodes(i));
      double w = 0.5 * (rule.weights(i) + rule.weights(j));
      rule.nodes(i) = -x;
      rule.nodes(j) = x;
      rule.weights(i) = rule.weights(j) = w;
    }
  }
  return rule;
}

QuadratureRule gauss_jacobi_rule(int m, double lambda) {
  require_positive_lambda(lambda);
  JacobiRule j = gauss_jacobi(m, lambda - 0.5, lambda - 0.5);
  QuadratureRule rule;
  rule.nodes = std::move(j.nodes);
  rule.weights = std::move(j.weights);
  rule.lambda = lambda;
  rule.exact_degree = 2 * m - 1;
  return rule;
}

namespace {

double quadrature_lambda(const Function1D& g, int n, double lambda, const QuadratureRule& rule) {
  double sum = 0.0;
  for (int j = 0; j < rule.size(); ++j) {
    const double t = rule.nodes(j);
    sum += rule.weights(j) * g(t) * gegenbauer_eval(n, lambda, t);
  }
  return c_lambda(lambda) * sum / gegenbauer_at_one(n, lambda);
}

}  // namespace

double lp_norm_segment(const Function1D& g, double p, double lambda, const QuadratureRule& rule) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
  if (std::abs(rule.lambda - lambda) > 1e-14 * lambda)
    throw std::invalid_argument("quadrature rule was built for a different lambda");
  double sum = 0.0;
  for (int j = 0; j < rule.size(); ++j) sum += rule.weights(j) * std::pow(std::abs(g(rule.nodes(j))), p);
  return std::pow(c_lambda(lambda) * sum, 1.0 / p);
}

CoefficientEstimate lambda_coefficient(const Function1D& g, int n, double lambda, const QuadratureRule& rule) {
  require_positive_lambda(lambda);
  if (std::abs(rule.lambda - lambda) > 1e-14 * lambda)
    throw std::invalid_argument("quadrature rule was built for a different lambda");
  CoefficientEstimate est;
  est.method = CoefficientMethod::quadrature;
  est.value = quadrature_lambda(g, n, lambda, rule);
  QuadratureRule fine = gauss_jacobi_rule(2 * rule.size(), lambda);
  est.error_bound = std::abs(est.value - quadrature_lambda(g, n, lambda, fine));
  est.scale = std::max(1.0, lp_norm_segment(g, 1.0, lambda, rule));
  return est;
}

double monomial_lambda_coefficient(int k, int n, double lambda) {
  require_positive_lambda(lambda);
  if (k < n || (k - n) % 2 != 0) return 0.0;
  // Lambda_n(t^n) = lambda/(lambda+n) * prod_{i=1}^n i / (2 (lambda+i-1)), then
  // Lambda_n(t^{k+2}) / Lambda_n(t^k) = (k+1)(k+2) / (4 (j+1) (lambda+n+j+1)).
  double r = lambda / (lambda + n);
  for (int i = 1; i <= n; ++i) r *= i / (2.0 * (lambda + i - 1.0));
  for (int j = 0, kk = n; kk < k; ++j, kk += 2) r *= (kk + 1.0) * (kk + 2.0) / (4.0 * (j + 1.0) * (lambda + n + j + 1.0));
  return r;
}

namespace {

struct SeriesSum {
  double value = 0.0;
  double abs_sum = 0.0;
  double tail = 0.0;
  int terms = 0;
};

// sum_j sign_j * w^{n+2j} * Lambda_n(t^{n+2j}) / (n+2j)!; sign_j alternates
// when `alternating` (cosine) and is +1 otherwise (exponential).
SeriesSum entire_series(int n, double lambda, double w, bool alternating) {
  SeriesSum s;
  if (w == 0.0) return s;
  // term_0 = lambda / ((lambda+n) 2^n (lambda)_n) * w^n, computed in logs to
  // stay finite for large n.
  double log_term = std::log(lambda) - std::log(lambda + n) - n * std::numbers::ln2 + n * std::log(std::abs(w));
  for (int i = 0; i < n; ++i) log_term -= std::log(lambda + i);
  double sign = (w < 0 && n % 2 == 1) ? -1.0 : 1.0;
  if (alternating && (n / 2) % 2 == 1) sign = -sign;
  double term = std::exp(log_term);
  double max_term = term;
  for (int j = 0; j < 10000; ++j) {
    s.value += sign * term;
    s.abs_sum += term;
    ++s.terms;
    double ratio = w * w / (4.0 * (j + 1.0) * (lambda + n + j + 1.0));
    double next = term * ratio;
    max_term = std::max(max_term, next);
    if (ratio < 0.5 && next <= 1e-18 * max_term) {
      // Remaining ratios shrink, so the tail is dominated by a geometric series.
      s.tail = next / (1.0 - ratio);
      break;
    }
    term = next;
    if (alternating) sign = -sign;
  }
  return s;
}

std::optional<CoefficientEstimate> analytic(const Function1D& g, int n, double lambda) {
  using Kind = Function1D::Kind;
  const auto& node = g.node();
  CoefficientEstimate est;
  est.method = CoefficientMethod::analytic;
  switch (node.kind) {
    case Kind::step:
    case Kind::table: return std::nullopt;
    case Kind::exponential:
    case Kind::cosine: {
      const bool cosine = node.kind == Kind::cosine;
      if (cosine && n % 2 == 1) {
        est.value = est.scale = est.error_bound = 0.0;
        return est;
      }
      SeriesSum s = entire_series(n, lambda, cosine ? node.a : 1.0, cosine);
      est.value = s.value;
      est.scale = s.abs_sum;
      est.error_bound = 4.0 * kUnitRoundoff * (s.terms + n + 4) * s.abs_sum + s.tail;
      return est;
    }
    case Kind::gegenbauer:
      if (node.lambda && std::abs(*node.lambda - lambda) <= 1e-15 * lambda) {
        est.value = node.n == n ? lambda / (n + lambda) : 0.0;
        est.scale = std::abs(est.value);
        est.error_bound = 4.0 * kUnitRoundoff * est.scale;
        return est;
      }
      [[fallthrough]];
    case Kind::constant:
    case Kind::polynomial: {
      auto coeffs = g.polynomial_coefficients();
      if (!coeffs) throw std::logic_error("unbound Gegenbauer function; call with_lambda first");
      double value = 0.0, abs_sum = 0.0;
      int terms = 0;
      for (int k = n; k < static_cast<int>(coeffs->size()); k += 2) {
        double c = (*coeffs)[k];
        if (c == 0.0) continue;
        double contribution = c * monomial_lambda_coefficient(k, n, lambda);
        value += contribution;
        abs_sum += std::abs(contribution);
        ++terms;
      }
      est.value = value;
      est.scale = abs_sum;
      est.error_bound = 4.0 * kUnitRoundoff * (terms + n + 4) * abs_sum;
      return est;
    }
    case Kind::sum: {
      est.value = est.scale = est.error_bound = 0.0;
      for (const auto& [w, h] : node.terms) {
        auto part = analytic(h, n, lambda);
        if (!part) return std::nullopt;
        est.value += w * part->value;
        est.scale += std::abs(w) * part->scale;
        est.error_bound += std::abs(w) * part->error_bound;
      }
      est.error_bound += 4.0 * kUnitRoundoff * node.terms.size() * est.scale;
      return est;
    }
    case Kind::even_part:
    case Kind::odd_part: {
      const bool even = node.kind == Kind::even_part;
      auto part = analytic(node.inner[0], n, lambda);
      if (!part) return std::nullopt;
      // C_n has the parity of n, so the opposite parity part contributes nothing.
      if ((n % 2 == 0) != even) {
        est.value = est.scale = est.error_bound = 0.0;
        return est;
      }
      return part;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<CoefficientEstimate> lambda_coefficient_analytic(const Function1D& g, int n, double lambda) {
  require_positive_lambda(lambda);
  if (n < 0) throw std::invalid_argument("degree must be nonnegative");
  return analytic(g, n, lambda);
}

std::string flag_name(ZeroFlag f) {
  switch (f) {
    case ZeroFlag::nonzero: return "nonzero";
    case ZeroFlag::zero: return "zero";
    case ZeroFlag::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

ZeroFlag classify_coefficient(double value, double error_bound, double scale, double epsilon) {
  const double threshold = epsilon * scale;
  if (std::abs(value) <= threshold) return error_bound <= threshold ? ZeroFlag::zero : ZeroFlag::indeterminate;
  return error_bound < std::abs(value) ? ZeroFlag::nonzero : ZeroFlag::indeterminate;
}

std::vector<int> CoefficientProfile::degrees_flagged(ZeroFlag flag) const {
  std::vector<int> out;
  for (const auto& e : entries)
    if (e.flag == flag) out.push_back(e.n);
  return out;
}

int default_quadrature_nodes(const Function1D& g, int N) {
  if (auto deg = g.polynomial_degree()) return std::max(64, 2 * (N + *deg) + 16);
  return std::max(256, 2 * N + 64);
}

CoefficientProfile coefficient_profile(const Function1D& g_in, double lambda, int N, double epsilon, int m,
                                       MethodPreference preference) {
  require_positive_lambda(lambda);
  if (N < 0) throw std::invalid_argument("truncation N must be nonnegative");
  if (!(epsilon > 0.0)) throw std::invalid_argument("zero tolerance must be positive");
  const Function1D g = g_in.with_lambda(lambda);
  CoefficientProfile profile;
  profile.lambda = lambda;
  profile.epsilon = epsilon;
  profile.quadrature_nodes = m > 0 ? m : default_quadrature_nodes(g, N);
  std::optional<QuadratureRule> rule;
  for (int n = 0; n <= N; ++n) {
    std::optional<CoefficientEstimate> est;
    if (preference == MethodPreference::automatic) est = analytic(g, n, lambda);
    if (!est) {
      if (!rule) rule = gauss_jacobi_rule(profile.quadrature_nodes, lambda);
      est = lambda_coefficient(g, n, lambda, *rule);
    }
    CoefficientEntry e;
    e.n = n;
    e.value = est->value;
    e.error_bound = est->error_bound;
    e.scale = est->scale;
    e.method = est->method;
    e.flag = classify_coefficient(e.value, e.error_bound, e.scale, epsilon);
    profile.entries.push_back(e);
  }
  return profile;
}

}  // namespace dunkl
