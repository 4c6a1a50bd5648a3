// Scalar types shared by the exact (rational) and floating pipelines.
#ifndef DUNKL_SCALAR_HPP
#define DUNKL_SCALAR_HPP

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dunkl {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool is_exact = false;
  static double to_double(double x) { return x; }
  static double from_ratio(long long p, long long q) {
    return static_cast<double>(p) / static_cast<double>(q);
  }
  static double abs(double x) { return std::abs(x); }
  // Shortest representation that parses back to the same double.
  static std::string to_string(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  }
  static double parse(std::string_view text);
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;
  static double to_double(const Rational& x) { return static_cast<double>(x); }
  static Rational from_ratio(long long p, long long q) { return Rational(p, q); }
  static Rational abs(const Rational& x) { return boost::multiprecision::abs(x); }
  static std::string to_string(const Rational& x) { return x.str(); }
  static Rational parse(std::string_view text);
};

template <typename Scalar>
inline double to_double(const Scalar& x) {
  return ScalarTraits<Scalar>::to_double(x);
}

template <typename Scalar>
inline Scalar parse_scalar(std::string_view text) {
  return ScalarTraits<Scalar>::parse(text);
}

// Accepts "p/q", integers and plain decimals with optional exponent
// ("0.125", "-3e-2"). Decimals are converted exactly.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  bool negative = false;
  std::size_t pos = 0;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long long scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  long long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E')
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    std::string_view rest = text.substr(pos + 1);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc() || ptr != rest.data() + rest.size())
      throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
  }
  using boost::multiprecision::mpz_int;
  mpz_int num(digits);
  long long shift = exponent - scale;
  mpz_int ten_pow = boost::multiprecision::pow(mpz_int(10), static_cast<unsigned>(std::llabs(shift)));
  Rational value = shift >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
  return negative ? Rational(-value) : value;
}

inline Rational ScalarTraits<Rational>::parse(std::string_view text) { return parse_rational(text); }

inline double ScalarTraits<double>::parse(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return static_cast<double>(parse_rational(text));
  std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed number '" + s + "'");
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
  return value;
}

// Rising factorial (a)_n.
template <typename Scalar>
Scalar pochhammer(const Scalar& a, int n) {
  Scalar result(1);
  for (int k = 0; k < n; ++k) result *= a + Scalar(k);
  return result;
}

}  // namespace dunkl

#endif  // DUNKL_SCALAR_HPP
