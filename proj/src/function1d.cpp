#include "dunkl/function1d.hpp"

#include "dunkl/gegenbauer.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace dunkl {

namespace {

std::shared_ptr<Function1D::Node> make_node(Function1D::Kind kind) {
  auto node = std::make_shared<Function1D::Node>();
  node->kind = kind;
  return node;
}

double eval_polynomial(const std::vector<double>& c, double t) {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + *it;
  return r;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<double> gegenbauer_coefficients(int n, double lambda) {
  // Same three-term recurrence as gegenbauer_eval, on coefficient vectors.
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> cur{0.0, 2.0 * lambda};
  for (int k = 2; k <= n; ++k) {
    std::vector<double> next(k + 1, 0.0);
    const double a = 2.0 * (k + lambda - 1.0) / k;
    const double b = (k + 2.0 * lambda - 2.0) / k;
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += a * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= b * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Function1D Function1D::constant(double c) {
  auto node = make_node(Kind::constant);
  node->a = c;
  return Function1D(node);
}

Function1D Function1D::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  auto node = make_node(Kind::polynomial);
  node->coefficients = std::move(coefficients);
  return Function1D(node);
}

Function1D Function1D::exponential() { return Function1D(make_node(Kind::exponential)); }

Function1D Function1D::cosine(double w) {
  auto node = make_node(Kind::cosine);
  node->a = w;
  return Function1D(node);
}

Function1D Function1D::step(double a) {
  auto node = make_node(Kind::step);
  node->a = a;
  return Function1D(node);
}

Function1D Function1D::gegenbauer(int n, std::optional<double> lambda) {
  if (n < 0) throw std::invalid_argument("Gegenbauer degree must be nonnegative");
  if (lambda && !(*lambda > 0.0)) throw std::invalid_argument("Gegenbauer parameter must be positive");
  auto node = make_node(Kind::gegenbauer);
  node->n = n;
  node->lambda = lambda;
  if (lambda) node->coefficients = gegenbauer_coefficients(n, *lambda);
  return Function1D(node);
}

Function1D Function1D::table(std::vector<double> t, std::vector<double> v) {
  if (t.size() != v.size() || t.size() < 2) throw std::invalid_argument("table needs at least two (t, v) pairs");
  if (!std::is_sorted(t.begin(), t.end()) || std::adjacent_find(t.begin(), t.end()) != t.end())
    throw std::invalid_argument("table abscissae must be strictly increasing");
  auto node = make_node(Kind::table);
  node->coefficients = std::move(t);
  node->values = std::move(v);
  return Function1D(node);
}

Function1D Function1D::sum(std::vector<std::pair<double, Function1D>> terms) {
  if (terms.empty()) throw std::invalid_argument("sum needs at least one term");
  auto node = make_node(Kind::sum);
  node->terms = std::move(terms);
  return Function1D(node);
}

Function1D Function1D::even_part(Function1D g) {
  auto node = make_node(Kind::even_part);
  node->inner.push_back(std::move(g));
  return Function1D(node);
}

Function1D Function1D::odd_part(Function1D g) {
  auto node = make_node(Kind::odd_part);
  node->inner.push_back(std::move(g));
  return Function1D(node);
}

Function1D::Kind Function1D::kind() const { return node_->kind; }

double Function1D::operator()(double t) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return n.a;
    case Kind::polynomial: return eval_polynomial(n.coefficients, t);
    case Kind::exponential: return std::exp(t);
    case Kind::cosine: return std::cos(n.a * t);
    case Kind::step: return t >= n.a ? 1.0 : 0.0;
    case Kind::gegenbauer:
      if (!n.lambda) throw std::logic_error("gegen " + std::to_string(n.n) + " has no lambda bound");
      return gegenbauer_eval(n.n, *n.lambda, t);
    case Kind::table: {
      const auto& ts = n.coefficients;
      if (t <= ts.front()) return n.values.front();
      if (t >= ts.back()) return n.values.back();
      auto it = std::upper_bound(ts.begin(), ts.end(), t);
      std::size_t i = static_cast<std::size_t>(it - ts.begin());
      double s = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
      return (1.0 - s) * n.values[i - 1] + s * n.values[i];
    }
    case Kind::sum: {
      double r = 0.0;
      for (const auto& [w, g] : n.terms) r += w * g(t);
      return r;
    }
    case Kind::even_part: return 0.5 * (n.inner[0](t) + n.inner[0](-t));
    case Kind::odd_part: return 0.5 * (n.inner[0](t) - n.inner[0](-t));
  }
  return 0.0;
}

std::optional<std::vector<double>> Function1D::polynomial_coefficients() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return std::vector<double>{n.a};
    case Kind::polynomial: return n.coefficients;
    case Kind::gegenbauer:
      if (!n.lambda) return std::nullopt;
      return n.coefficients;
    case Kind::sum: {
      std::vector<double> out;
      for (const auto& [w, g] : n.terms) {
        auto c = g.polynomial_coefficients();
        if (!c) return std::nullopt;
        if (c->size() > out.size()) out.resize(c->size(), 0.0);
        for (std::size_t i = 0; i < c->size(); ++i) out[i] += w * (*c)[i];
      }
      return out;
    }
    case Kind::even_part:
    case Kind::odd_part: {
      auto c = n.inner[0].polynomial_coefficients();
      if (!c) return std::nullopt;
      const std::size_t keep = n.kind == Kind::even_part ? 0 : 1;
      for (std::size_t i = 0; i < c->size(); ++i)
        if (i % 2 != keep) (*c)[i] = 0.0;
      return c;
    }
    default: return std::nullopt;
  }
}

std::optional<int> Function1D::polynomial_degree() const {
  auto c = polynomial_coefficients();
  if (!c) return std::nullopt;
  int deg = static_cast<int>(c->size()) - 1;
  while (deg > 0 && (*c)[deg] == 0.0) --deg;
  return deg;
}

bool Function1D::is_smooth() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::step:
    case Kind::table: return false;
    case Kind::sum:
      return std::all_of(n.terms.begin(), n.terms.end(), [](const auto& t) { return t.second.is_smooth(); });
    case Kind::even_part:
    case Kind::odd_part: return n.inner[0].is_smooth();
    default: return true;
  }
}

bool Function1D::is_bound() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::gegenbauer: return n.lambda.has_value();
    case Kind::sum:
      return std::all_of(n.terms.begin(), n.terms.end(), [](const auto& t) { return t.second.is_bound(); });
    case Kind::even_part:
    case Kind::odd_part: return n.inner[0].is_bound();
    default: return true;
  }
}

Function1D Function1D::with_lambda(double lambda) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::gegenbauer: return n.lambda ? *this : gegenbauer(n.n, lambda);
    case Kind::sum: {
      std::vector<std::pair<double, Function1D>> terms;
      for (const auto& [w, g] : n.terms) terms.emplace_back(w, g.with_lambda(lambda));
      return sum(std::move(terms));
    }
    case Kind::even_part: return even_part(n.inner[0].with_lambda(lambda));
    case Kind::odd_part: return odd_part(n.inner[0].with_lambda(lambda));
    default: return *this;
  }
}

std::string Function1D::describe() const {
  const Node& n = *node_;
  auto list = [](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_number(xs[i]);
    return s;
  };
  auto atom = [](const Function1D& g) {
    std::string s = g.describe();
    return g.kind() == Kind::sum ? "(" + s + ")" : s;
  };
  switch (n.kind) {
    case Kind::constant: return format_number(n.a);
    case Kind::polynomial: return "poly " + list(n.coefficients);
    case Kind::exponential: return "exp";
    case Kind::cosine: return "cos " + format_number(n.a);
    case Kind::step: return "step " + format_number(n.a);
    case Kind::gegenbauer: return "gegen " + std::to_string(n.n);
    case Kind::table: {
      std::string s = "table ";
      for (std::size_t i = 0; i < n.values.size(); ++i)
        s += (i ? "," : "") + format_number(n.coefficients[i]) + ":" + format_number(n.values[i]);
      return s;
    }
    case Kind::sum: {
      std::string s = "sum ";
      for (std::size_t i = 0; i < n.terms.size(); ++i)
        s += (i ? " + " : "") + format_number(n.terms[i].first) + "*" + atom(n.terms[i].second);
      return s;
    }
    case Kind::even_part: return "even " + atom(n.inner[0]);
    case Kind::odd_part: return "odd " + atom(n.inner[0]);
  }
  return "";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Function1D parse() {
    Function1D f = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse function '" + std::string(text_) + "': " + what + " at offset " +
                                std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_char(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek_char(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_number() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
  }

  double number() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      bool exp_sign = (c == '+' || c == '-') && pos_ > start && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E');
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' || c == '/' || exp_sign)
        ++pos_;
      else
        break;
    }
    std::string_view tok = text_.substr(start, pos_ - start);
    if (tok.empty() || tok == "+" || tok == "-") fail("expected a number");
    try {
      return parse_double(tok);
    } catch (const std::invalid_argument&) {
      fail("malformed number '" + std::string(tok) + "'");
    }
  }

  static double parse_double(std::string_view tok) {
    if (auto slash = tok.find('/'); slash != std::string_view::npos)
      return parse_double(tok.substr(0, slash)) / parse_double(tok.substr(slash + 1));
    double v = 0.0;
    std::string s(tok);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad number");
    return v;
  }

  std::vector<double> number_list() {
    std::vector<double> xs{number()};
    while (peek_char(',')) {
      ++pos_;
      xs.push_back(number());
    }
    return xs;
  }

  Function1D expr() {
    skip_space();
    std::size_t save = pos_;
    if (word() == "sum") {
      std::vector<std::pair<double, Function1D>> terms;
      terms.push_back(term());
      while (peek_char('+')) {
        ++pos_;
        terms.push_back(term());
      }
      return Function1D::sum(std::move(terms));
    }
    pos_ = save;
    return atom();
  }

  std::pair<double, Function1D> term() {
    skip_space();
    std::size_t save = pos_;
    if (at_number()) {
      double w = number();
      if (peek_char('*')) {
        ++pos_;
        return {w, atom()};
      }
      pos_ = save;
    }
    return {1.0, atom()};
  }

  Function1D atom() {
    if (peek_char('(')) {
      ++pos_;
      Function1D f = expr();
      expect(')');
      return f;
    }
    if (at_number()) return Function1D::constant(number());
    std::string w = word();
    if (w == "poly") return Function1D::polynomial(number_list());
    if (w == "exp") return Function1D::exponential();
    if (w == "cos") return Function1D::cosine(number());
    if (w == "step") return Function1D::step(number());
    if (w == "even") return Function1D::even_part(atom());
    if (w == "odd") return Function1D::odd_part(atom());
    if (w == "gegen") {
      double n = number();
      if (n < 0 || std::floor(n) != n) fail("gegen needs a nonnegative integer degree");
      return Function1D::gegenbauer(static_cast<int>(n));
    }
    if (w == "table") {
      std::vector<double> ts, vs;
      do {
        if (!ts.empty()) ++pos_;
        ts.push_back(number());
        expect(':');
        vs.push_back(number());
      } while (peek_char(','));
      return Function1D::table(std::move(ts), std::move(vs));
    }
    fail(w.empty() ? "expected a function" : "unknown function '" + w + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Function1D parse_function(std::string_view text) { return Parser(text).parse(); }

}  // namespace dunkl
