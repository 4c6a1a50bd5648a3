// Functions on [-1, 1]: the g in the kernel translates and Gegenbauer
// coefficients. Values are real; a complex g splits into real and imaginary
// parts by linearity of every downstream quantity.
#ifndef DUNKL_FUNCTION1D_HPP
#define DUNKL_FUNCTION1D_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dunkl {

class Function1D {
 public:
  enum class Kind { constant, polynomial, exponential, cosine, step, gegenbauer, table, sum, even_part, odd_part };

  static Function1D constant(double c);
  /// c0 + c1 t + c2 t^2 + ...
  static Function1D polynomial(std::vector<double> coefficients);
  static Function1D exponential();
  /// cos(w t)
  static Function1D cosine(double w);
  /// 1 for t >= a, else 0
  static Function1D step(double a);
  /// C_n^lambda. Without lambda the function is unbound and must go through
  /// with_lambda() before evaluation.
  static Function1D gegenbauer(int n, std::optional<double> lambda = std::nullopt);
  /// Piecewise-linear interpolation through (t_i, v_i), t_i increasing.
  static Function1D table(std::vector<double> t, std::vector<double> v);
  static Function1D sum(std::vector<std::pair<double, Function1D>> terms);
  /// (g(t) + g(-t)) / 2
  static Function1D even_part(Function1D g);
  /// (g(t) - g(-t)) / 2
  static Function1D odd_part(Function1D g);

  double operator()(double t) const;

  Kind kind() const;
  /// Polynomial degree, or nullopt for non-polynomial functions.
  std::optional<int> polynomial_degree() const;
  /// Coefficients in the monomial basis when the function is a polynomial.
  std::optional<std::vector<double>> polynomial_coefficients() const;
  /// False for step and table functions (and sums containing them).
  bool is_smooth() const;
  bool is_bound() const;

  /// Binds every unbound Gegenbauer node to lambda.
  Function1D with_lambda(double lambda) const;

  /// Canonical text in the function grammar; parse_function(describe()) gives
  /// back an equivalent function.
  std::string describe() const;

  struct Node;
  const Node& node() const { return *node_; }

 private:
  explicit Function1D(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Function1D::Node {
  Kind kind;
  double a = 0.0;  // constant value, cosine frequency, step threshold
  int n = 0;       // Gegenbauer degree
  std::optional<double> lambda;
  std::vector<double> coefficients;  // polynomial; table abscissae
  std::vector<double> values;        // table ordinates
  std::vector<std::pair<double, Function1D>> terms;
  std::vector<Function1D> inner;  // even/odd argument
};

/// Grammar:
///   expr  := 'sum' term ('+' term)* | atom
///   term  := [number '*'] atom
///   atom  := number | 'poly' c0,c1,... | 'gegen' n | 'exp' | 'cos' w
///          | 'step' a | 'table' t0:v0,t1:v1,... | 'even' atom | 'odd' atom
///          | '(' expr ')'
Function1D parse_function(std::string_view text);

/// Monomial coefficients of C_n^lambda.
std::vector<double> gegenbauer_coefficients(int n, double lambda);

std::string format_number(double x);

}  // namespace dunkl

#endif  // DUNKL_FUNCTION1D_HPP
