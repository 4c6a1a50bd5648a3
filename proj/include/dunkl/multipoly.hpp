// Sparse multivariate polynomials over an exact (Rational) or floating (double)
// scalar. All Dunkl-theoretic operators act on this representation.
#ifndef DUNKL_MULTIPOLY_HPP
#define DUNKL_MULTIPOLY_HPP

#include "dunkl/errors.hpp"
#include "dunkl/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dunkl {

inline constexpr int kDefaultDegreeCap = 64;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents) : exponents_(std::move(exponents)) {
    for (int e : exponents_)
      if (e < 0) throw std::invalid_argument("negative exponent in monomial");
  }

  static Monomial one(int dimension) { return Monomial(std::vector<int>(dimension, 0)); }
  static Monomial unit(int dimension, int i) {
    std::vector<int> e(dimension, 0);
    e.at(i) = 1;
    return Monomial(std::move(e));
  }

  int dimension() const { return static_cast<int>(exponents_.size()); }
  int degree() const { return std::accumulate(exponents_.begin(), exponents_.end(), 0); }
  int operator[](int i) const { return exponents_[i]; }
  const std::vector<int>& exponents() const { return exponents_; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<int> e(a.exponents_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.exponents_[i];
    return Monomial(std::move(e));
  }
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<int> exponents_;
};

// Graded lexicographic order: total degree first, then x1 > x2 > ... .
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.exponents() < b.exponents();
  }
};

// Monomials of total degree n in d variables, listed from the graded-lex
// largest (x1^n) downwards.
inline std::vector<Monomial> monomials_of_degree(int d, int n) {
  std::vector<Monomial> out;
  std::vector<int> e(d, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == d - 1) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (d == 1) {
    out.emplace_back(std::vector<int>{n});
  } else {
    rec(rec, 0, n);
  }
  return out;
}

// dim P_n^d = C(n+d-1, d-1); zero for negative n.
inline long long homogeneous_dimension(int d, int n) {
  if (n < 0) return 0;
  long long r = 1;
  for (int k = 1; k <= d - 1; ++k) r = r * (n + k) / k;
  return r;
}

template <typename Scalar>
class MultiPoly {
 public:
  using Terms = std::map<Monomial, Scalar, GradedLexLess>;

  MultiPoly() = default;

  explicit MultiPoly(int dimension, int degree_cap = kDefaultDegreeCap)
      : dimension_(dimension), degree_cap_(degree_cap) {
    if (dimension < 2) throw std::invalid_argument("polynomial dimension must be at least 2");
  }

  MultiPoly(int dimension, Terms terms, int degree_cap = kDefaultDegreeCap)
      : MultiPoly(dimension, degree_cap) {
    for (auto& [m, c] : terms) {
      if (m.dimension() != dimension) throw DimensionMismatch("monomial dimension mismatch");
      if (c != Scalar(0)) terms_.emplace(m, std::move(c));
    }
    check_cap();
  }

  static MultiPoly constant(int dimension, const Scalar& c) {
    MultiPoly p(dimension);
    if (c != Scalar(0)) p.terms_.emplace(Monomial::one(dimension), c);
    return p;
  }

  /// x_i, 0-based.
  static MultiPoly variable(int dimension, int i) {
    if (i < 0 || i >= dimension) throw std::out_of_range("variable index out of range");
    return monomial(Monomial::unit(dimension, i));
  }

  static MultiPoly monomial(const Monomial& m, const Scalar& c = Scalar(1)) {
    MultiPoly p(m.dimension());
    if (c != Scalar(0)) p.terms_.emplace(m, c);
    p.check_cap();
    return p;
  }

  /// The linear form x -> <v, x>.
  template <typename Derived>
  static MultiPoly linear_form(const Eigen::MatrixBase<Derived>& v) {
    const int d = static_cast<int>(v.size());
    MultiPoly p(d);
    for (int i = 0; i < d; ++i)
      if (v(i) != Scalar(0)) p.terms_.emplace(Monomial::unit(d, i), Scalar(v(i)));
    return p;
  }

  int dimension() const { return dimension_; }
  int degree_cap() const { return degree_cap_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool is_homogeneous() const {
    return terms_.empty() || terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
  }

  double max_abs_coefficient() const {
    double r = 0.0;
    for (const auto& [m, c] : terms_) r = std::max(r, std::abs(to_double(c)));
    return r;
  }

  MultiPoly with_degree_cap(int cap) const {
    MultiPoly p(*this);
    p.degree_cap_ = cap;
    p.check_cap();
    return p;
  }

  // Drops terms with |c| <= tol. Only meaningful in floating mode.
  MultiPoly pruned(double tol) const {
    MultiPoly p(dimension_, degree_cap_);
    for (const auto& [m, c] : terms_)
      if (std::abs(to_double(c)) > tol) p.terms_.emplace(m, c);
    return p;
  }

  template <typename Other>
  MultiPoly<Other> cast() const {
    typename MultiPoly<Other>::Terms t;
    for (const auto& [m, c] : terms_) {
      if constexpr (std::is_same_v<Other, double>)
        t.emplace(m, to_double(c));
      else
        t.emplace(m, Other(c));
    }
    return MultiPoly<Other>(dimension_, std::move(t), degree_cap_);
  }

  MultiPoly operator-() const {
    MultiPoly p(*this);
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
  }

  MultiPoly& operator+=(const MultiPoly& q) {
    require_same_dimension(q);
    degree_cap_ = std::max(degree_cap_, q.degree_cap_);
    for (const auto& [m, c] : q.terms_) accumulate(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& q) {
    require_same_dimension(q);
    degree_cap_ = std::max(degree_cap_, q.degree_cap_);
    for (const auto& [m, c] : q.terms_) accumulate(m, -c);
    return *this;
  }
  MultiPoly& operator*=(const Scalar& s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly p, const MultiPoly& q) { return p += q; }
  friend MultiPoly operator-(MultiPoly p, const MultiPoly& q) { return p -= q; }
  friend MultiPoly operator*(MultiPoly p, const Scalar& s) { return p *= s; }
  friend MultiPoly operator*(const Scalar& s, MultiPoly p) { return p *= s; }

  friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
    p.require_same_dimension(q);
    MultiPoly r(p.dimension_, std::max(p.degree_cap_, q.degree_cap_));
    if (!p.is_zero() && !q.is_zero() && p.degree() + q.degree() > r.degree_cap_)
      throw DegreeCapExceeded("product degree " + std::to_string(p.degree() + q.degree()) +
                              " exceeds cap " + std::to_string(r.degree_cap_));
    for (const auto& [ma, ca] : p.terms_)
      for (const auto& [mb, cb] : q.terms_) r.accumulate(ma * mb, ca * cb);
    return r;
  }

  friend bool operator==(const MultiPoly& p, const MultiPoly& q) {
    return p.dimension_ == q.dimension_ && p.terms_ == q.terms_;
  }

  // Internal mutation used while building results; keeps the no-zero-term
  // invariant.
  void accumulate(const Monomial& m, const Scalar& c) {
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
    if (m.degree() > degree_cap_)
      throw DegreeCapExceeded("degree " + std::to_string(m.degree()) + " exceeds cap " +
                              std::to_string(degree_cap_));
  }

 private:
  void require_same_dimension(const MultiPoly& q) const {
    if (dimension_ != q.dimension_)
      throw DimensionMismatch("polynomial dimensions differ: " + std::to_string(dimension_) +
                              " vs " + std::to_string(q.dimension_));
  }
  void check_cap() const {
    if (degree() > degree_cap_)
      throw DegreeCapExceeded("degree " + std::to_string(degree()) + " exceeds cap " +
                              std::to_string(degree_cap_));
  }

  int dimension_ = 0;
  int degree_cap_ = kDefaultDegreeCap;
  Terms terms_;
};

template <typename Scalar>
MultiPoly<Scalar> pow(const MultiPoly<Scalar>& p, int k) {
  MultiPoly<Scalar> r = MultiPoly<Scalar>::constant(p.dimension(), Scalar(1)).with_degree_cap(p.degree_cap());
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

template <typename Scalar, typename Derived>
Scalar eval(const MultiPoly<Scalar>& p, const Eigen::MatrixBase<Derived>& x) {
  const int d = p.dimension();
  if (x.size() != d) throw DimensionMismatch("evaluation point has wrong dimension");
  const int n = std::max(p.degree(), 0);
  // powers[i][k] = x_i^k
  std::vector<std::vector<Scalar>> powers(d, std::vector<Scalar>(n + 1, Scalar(1)));
  for (int i = 0; i < d; ++i)
    for (int k = 1; k <= n; ++k) powers[i][k] = powers[i][k - 1] * Scalar(x(i));
  Scalar sum(0);
  for (const auto& [m, c] : p.terms()) {
    Scalar term = c;
    for (int i = 0; i < d; ++i)
      if (m[i] > 0) term *= powers[i][m[i]];
    sum += term;
  }
  return sum;
}

template <typename Scalar>
Scalar eval(const MultiPoly<Scalar>& p, std::initializer_list<Scalar> x) {
  VectorX<Scalar> v(static_cast<Eigen::Index>(x.size()));
  Eigen::Index i = 0;
  for (const auto& xi : x) v(i++) = xi;
  return eval(p, v);
}

/// The polynomial q with q(x) = p(M x).
template <typename Scalar, typename Derived>
MultiPoly<Scalar> substitute_linear(const MultiPoly<Scalar>& p, const Eigen::MatrixBase<Derived>& M) {
  const int d = p.dimension();
  if (M.rows() != d || M.cols() != d) throw DimensionMismatch("substitution matrix must be d x d");
  const int n = std::max(p.degree(), 0);
  // row_powers[i][k] = (sum_j M_ij x_j)^k
  std::vector<std::vector<MultiPoly<Scalar>>> row_powers(d);
  for (int i = 0; i < d; ++i) {
    auto form = MultiPoly<Scalar>::linear_form(VectorX<Scalar>(M.row(i).transpose())).with_degree_cap(p.degree_cap());
    row_powers[i].reserve(n + 1);
    row_powers[i].push_back(MultiPoly<Scalar>::constant(d, Scalar(1)).with_degree_cap(p.degree_cap()));
    for (int k = 1; k <= n; ++k) row_powers[i].push_back(row_powers[i].back() * form);
  }
  MultiPoly<Scalar> result(d, p.degree_cap());
  for (const auto& [m, c] : p.terms()) {
    MultiPoly<Scalar> term = MultiPoly<Scalar>::constant(d, c).with_degree_cap(p.degree_cap());
    for (int i = 0; i < d; ++i)
      if (m[i] > 0) term = term * row_powers[i][m[i]];
    result += term;
  }
  return result;
}

/// Formal derivative with respect to x_i (0-based).
template <typename Scalar>
MultiPoly<Scalar> partial_derivative(const MultiPoly<Scalar>& p, int i) {
  const int d = p.dimension();
  if (i < 0 || i >= d) throw std::out_of_range("derivative index out of range");
  MultiPoly<Scalar> r(d, p.degree_cap());
  for (const auto& [m, c] : p.terms()) {
    if (m[i] == 0) continue;
    std::vector<int> e = m.exponents();
    e[i] -= 1;
    r.accumulate(Monomial(std::move(e)), c * Scalar(m[i]));
  }
  return r;
}

/// Divides p by the linear form <v, x>. The pivot variable x_k (largest
/// |v_k|) is eliminated term by term, highest power first; the remainder is
/// the part of p free of x_k and must vanish (exactly in rational mode, to
/// 1e-10 relative in floating mode).
template <typename Scalar, typename Derived>
MultiPoly<Scalar> divide_by_linear_form(const MultiPoly<Scalar>& p, const Eigen::MatrixBase<Derived>& v) {
  const int d = p.dimension();
  if (v.size() != d) throw DimensionMismatch("linear form has wrong dimension");
  int k = -1;
  double best = 0.0;
  for (int i = 0; i < d; ++i) {
    double a = std::abs(to_double(Scalar(v(i))));
    if (a > best) {
      best = a;
      k = i;
    }
  }
  if (k < 0) throw std::invalid_argument("cannot divide by the zero linear form");
  const Scalar vk = v(k);

  // Group the remaining work by the exponent of x_k so each pass only
  // produces terms of strictly lower x_k-degree.
  std::map<int, MultiPoly<Scalar>, std::greater<>> by_power;
  for (const auto& [m, c] : p.terms()) {
    auto [it, _] = by_power.try_emplace(m[k], MultiPoly<Scalar>(d, p.degree_cap()));
    it->second.accumulate(m, c);
  }
  MultiPoly<Scalar> quotient(d, p.degree_cap());
  while (!by_power.empty() && by_power.begin()->first > 0) {
    auto node = by_power.extract(by_power.begin());
    for (const auto& [m, c] : node.mapped().terms()) {
      std::vector<int> e = m.exponents();
      e[k] -= 1;
      Monomial base(e);
      Scalar q = c / vk;
      quotient.accumulate(base, q);
      for (int j = 0; j < d; ++j) {
        if (j == k || v(j) == Scalar(0)) continue;
        std::vector<int> ej = base.exponents();
        ej[j] += 1;
        Monomial mj(std::move(ej));
        auto [it, _] = by_power.try_emplace(mj[k], MultiPoly<Scalar>(d, p.degree_cap()));
        it->second.accumulate(mj, -q * Scalar(v(j)));
      }
    }
  }
  if (!by_power.empty() && !by_power.begin()->second.is_zero()) {
    const auto& rem = by_power.begin()->second;
    if constexpr (ScalarTraits<Scalar>::is_exact) {
      throw NotDivisible("polynomial is not divisible by the linear form");
    } else {
      double scale = std::max(1.0, p.max_abs_coefficient());
      if (rem.max_abs_coefficient() > 1e-10 * scale)
        throw NotDivisible("polynomial is not divisible by the linear form (remainder " +
                           std::to_string(rem.max_abs_coefficient()) + ")");
    }
  }
  return quotient;
}

/// Splits p into homogeneous parts, ascending by degree.
template <typename Scalar>
std::vector<std::pair<int, MultiPoly<Scalar>>> homogeneous_components(const MultiPoly<Scalar>& p) {
  std::vector<std::pair<int, MultiPoly<Scalar>>> out;
  for (const auto& [m, c] : p.terms()) {
    int deg = m.degree();
    if (out.empty() || out.back().first != deg) out.emplace_back(deg, MultiPoly<Scalar>(p.dimension(), p.degree_cap()));
    out.back().second.accumulate(m, c);
  }
  return out;
}

// Text form: terms in descending graded-lex order joined by " + ", each
// written "c*x1^a1*x2^a2" with unit exponents shown as "x1" and zero
// exponents omitted. The zero polynomial is "0".
template <typename Scalar>
std::string to_string(const MultiPoly<Scalar>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (!first) out += " + ";
    first = false;
    out += ScalarTraits<Scalar>::to_string(it->second);
    const auto& m = it->first;
    for (int i = 0; i < m.dimension(); ++i) {
      if (m[i] == 0) continue;
      out += "*x" + std::to_string(i + 1);
      if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
  }
  return out;
}

template <typename Scalar>
MultiPoly<Scalar> parse_multipoly(std::string_view text, int dimension) {
  MultiPoly<Scalar> p(dimension);
  std::string s(text);
  auto trim = [](std::string t) {
    auto b = t.find_first_not_of(" \t\n");
    auto e = t.find_last_not_of(" \t\n");
    return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  if (trim(s) == "0") return p;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t plus = s.find(" + ", start);
    std::string term = trim(s.substr(start, plus == std::string::npos ? std::string::npos : plus - start));
    if (term.empty()) throw std::invalid_argument("empty term in polynomial text");
    std::vector<int> e(dimension, 0);
    std::size_t star = term.find('*');
    std::string coeff = term.substr(0, star);
    Scalar c = parse_scalar<Scalar>(coeff);
    while (star != std::string::npos) {
      std::size_t next = term.find('*', star + 1);
      std::string factor = term.substr(star + 1, next == std::string::npos ? std::string::npos : next - star - 1);
      if (factor.size() < 2 || factor[0] != 'x') throw std::invalid_argument("bad factor '" + factor + "'");
      std::size_t caret = factor.find('^');
      int var = std::stoi(factor.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
      int power = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
      if (var < 1 || var > dimension) throw std::out_of_range("variable index out of range in '" + factor + "'");
      e[var - 1] += power;
      star = next;
    }
    p.accumulate(Monomial(std::move(e)), c);
    if (plus == std::string::npos) break;
    start = plus + 3;
  }
  return p;
}

}  // namespace dunkl

#endif  // DUNKL_MULTIPOLY_HPP
