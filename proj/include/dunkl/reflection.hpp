// Root systems, finite reflection groups, multiplicity functions and the
// constants gamma_kappa, lambda_kappa and weight w_kappa derived from them.
#ifndef DUNKL_REFLECTION_HPP
#define DUNKL_REFLECTION_HPP

#include "dunkl/errors.hpp"
#include "dunkl/multipoly.hpp"
#include "dunkl/scalar.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace dunkl {

enum class Family { zd2, a, b, d, i2, custom };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::zd2: return "zd2";
    case Family::a: return "a";
    case Family::b: return "b";
    case Family::d: return "d";
    case Family::i2: return "i2";
    case Family::custom: return "custom";
  }
  return "custom";
}

inline Family parse_family(std::string name) {
  for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (name == "zd2" || name == "z2d" || name == "z2") return Family::zd2;
  if (name == "a") return Family::a;
  if (name == "b") return Family::b;
  if (name == "d") return Family::d;
  if (name == "i2") return Family::i2;
  throw std::invalid_argument("unknown root system family '" + name + "'");
}

namespace detail {

template <typename Scalar>
bool near(const Scalar& a, const Scalar& b) {
  if constexpr (ScalarTraits<Scalar>::is_exact)
    return a == b;
  else
    return std::abs(a - b) <= 1e-10;
}

template <typename Scalar>
bool same_vector(const VectorX<Scalar>& a, const VectorX<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!near(a(i), b(i))) return false;
  return true;
}

template <typename Scalar>
bool same_matrix(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!near(a(i), b(i))) return false;
  return true;
}

template <typename Scalar>
bool is_zero_vector(const VectorX<Scalar>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!near(v(i), Scalar(0))) return false;
  return true;
}

// Nonzero iff a and b are parallel (a = t b for some real t).
template <typename Scalar>
bool parallel(const VectorX<Scalar>& a, const VectorX<Scalar>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = i + 1; j < a.size(); ++j)
      if (!near(Scalar(a(i) * b(j)), Scalar(a(j) * b(i)))) return false;
  return true;
}

// Generic direction (1, eps, eps^2, ...) with eps = 1/1000.
template <typename Scalar>
VectorX<Scalar> positive_direction(int d) {
  VectorX<Scalar> u(d);
  Scalar eps = ScalarTraits<Scalar>::from_ratio(1, 1000);
  Scalar p(1);
  for (int i = 0; i < d; ++i) {
    u(i) = p;
    p *= eps;
  }
  return u;
}

}  // namespace detail

template <typename Scalar>
struct RootSystem {
  int dimension = 0;
  Family family = Family::custom;
  int parameter = 0;  // d for the coordinate families, m for I2(m)
  std::vector<VectorX<Scalar>> roots;
  std::vector<VectorX<Scalar>> positive;

  template <typename Other>
  RootSystem<Other> cast() const {
    RootSystem<Other> r;
    r.dimension = dimension;
    r.family = family;
    r.parameter = parameter;
    for (const auto& v : roots) r.roots.push_back(v.template cast<Other>());
    for (const auto& v : positive) r.positive.push_back(v.template cast<Other>());
    return r;
  }
};

/// s_v = I - 2 v v^T / |v|^2.
template <typename Scalar>
MatrixX<Scalar> reflection_matrix(const VectorX<Scalar>& v) {
  if (v.size() == 0 || detail::is_zero_vector(v)) throw std::invalid_argument("reflection requires a nonzero vector");
  const Scalar norm2 = v.squaredNorm();
  MatrixX<Scalar> s = MatrixX<Scalar>::Identity(v.size(), v.size());
  s -= (Scalar(2) / norm2) * (v * v.transpose());
  return s;
}

// Index of +-w in list and the sign; nullopt if absent.
template <typename Scalar>
std::optional<std::pair<int, int>> find_up_to_sign(const std::vector<VectorX<Scalar>>& list, const VectorX<Scalar>& w) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (detail::same_vector<Scalar>(list[i], w)) return std::pair{static_cast<int>(i), 1};
    if (detail::same_vector<Scalar>(list[i], VectorX<Scalar>(-w))) return std::pair{static_cast<int>(i), -1};
  }
  return std::nullopt;
}

/// Checks R ∩ Rv = {±v}, s_v(R) = R and that `positive` is a valid positive
/// subsystem. Throws std::invalid_argument describing the first violation.
template <typename Scalar>
void validate_root_system(const RootSystem<Scalar>& R) {
  const auto& roots = R.roots;
  if (roots.empty()) throw std::invalid_argument("root system is empty");
  for (const auto& v : roots) {
    if (v.size() != R.dimension) throw DimensionMismatch("root has wrong dimension");
    if (detail::is_zero_vector(v)) throw std::invalid_argument("root system contains the zero vector");
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    bool has_negative = false;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (i == j) continue;
      if (detail::same_vector<Scalar>(roots[i], roots[j])) throw std::invalid_argument("duplicate root");
      if (!detail::parallel(roots[i], roots[j])) continue;
      if (detail::same_vector<Scalar>(roots[i], VectorX<Scalar>(-roots[j])))
        has_negative = true;
      else
        throw std::invalid_argument("root system contains parallel roots other than ±v");
    }
    if (!has_negative) throw std::invalid_argument("root system is not closed under negation");
  }
  for (const auto& v : roots) {
    MatrixX<Scalar> s = reflection_matrix(v);
    for (const auto& w : roots) {
      VectorX<Scalar> image = s * w;
      bool found = false;
      for (const auto& u : roots)
        if (detail::same_vector<Scalar>(u, image)) {
          found = true;
          break;
        }
      if (!found) throw std::invalid_argument("root system is not invariant under its reflections");
    }
  }
  if (R.positive.size() * 2 != roots.size()) throw std::invalid_argument("positive subsystem has wrong size");
  for (const auto& v : roots) {
    bool in_positive = false, negation_in_positive = false;
    for (const auto& p : R.positive) {
      in_positive = in_positive || detail::same_vector<Scalar>(p, v);
      negation_in_positive = negation_in_positive || detail::same_vector<Scalar>(p, VectorX<Scalar>(-v));
    }
    if (in_positive == negation_in_positive) throw std::invalid_argument("R is not the disjoint union of R+ and -R+");
  }
  const VectorX<Scalar> u = detail::positive_direction<Scalar>(R.dimension);
  for (const auto& v : R.positive)
    if (!(v.dot(u) > Scalar(0))) throw std::invalid_argument("positive subsystem is not separated by the reference hyperplane");
}

/// Builds a root system from an arbitrary root list; the positive subsystem
/// is {v : <v, u> > 0} for the fixed direction u = (1, 1e-3, 1e-6, ...).
template <typename Scalar>
RootSystem<Scalar> make_root_system(int dimension, std::vector<VectorX<Scalar>> roots, Family family = Family::custom,
                                    int parameter = 0) {
  RootSystem<Scalar> R;
  R.dimension = dimension;
  R.family = family;
  R.parameter = parameter;
  R.roots = std::move(roots);
  const VectorX<Scalar> u = detail::positive_direction<Scalar>(dimension);
  for (const auto& v : R.roots) {
    if (v.size() != dimension) throw DimensionMismatch("root has wrong dimension");
    Scalar s = v.dot(u);
    if (detail::near(s, Scalar(0))) throw std::invalid_argument("root orthogonal to the reference direction");
    if (s > Scalar(0)) R.positive.push_back(v);
  }
  validate_root_system(R);
  return R;
}

/// Standard root systems. `param` is the ambient dimension d for zd2, a, b, d
/// and the dihedral order m for i2. A_{d-1} is embedded in R^d.
template <typename Scalar>
RootSystem<Scalar> builtin_root_system(Family family, int param) {
  std::vector<VectorX<Scalar>> roots;
  auto unit = [](int d, int i) {
    VectorX<Scalar> e = VectorX<Scalar>::Zero(d);
    e(i) = Scalar(1);
    return e;
  };
  switch (family) {
    case Family::zd2:
    case Family::b:
    case Family::d:
    case Family::a: {
      const int d = param;
      if (d < 2) throw std::invalid_argument("root system dimension must be at least 2");
      if (family == Family::zd2 || family == Family::b)
        for (int i = 0; i < d; ++i) {
          roots.push_back(unit(d, i));
          roots.push_back(-unit(d, i));
        }
      if (family == Family::b || family == Family::d)
        for (int i = 0; i < d; ++i)
          for (int j = i + 1; j < d; ++j)
            for (int si : {1, -1})
              for (int sj : {1, -1}) roots.push_back(Scalar(si) * unit(d, i) + Scalar(sj) * unit(d, j));
      if (family == Family::a)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            if (i != j) roots.push_back(unit(d, i) - unit(d, j));
      return make_root_system<Scalar>(d, std::move(roots), family, d);
    }
    case Family::i2: {
      const int m = param;
      if (m < 3) throw std::invalid_argument("dihedral order must be at least 3");
      if constexpr (ScalarTraits<Scalar>::is_exact) {
        // Only I2(4) has rational roots in planar coordinates.
        if (m != 4) throw std::invalid_argument("I2(m) in exact mode is available only for m = 4");
        for (auto [x, y] : {std::pair{1, 0}, {1, 1}, {0, 1}, {-1, 1}}) {
          VectorX<Scalar> v(2);
          v << Scalar(x), Scalar(y);
          roots.push_back(v);
          roots.push_back(-v);
        }
      } else {
        for (int k = 0; k < 2 * m; ++k) {
          double angle = std::numbers::pi * k / m;
          VectorX<Scalar> v(2);
          v << std::cos(angle), std::sin(angle);
          for (Eigen::Index i = 0; i < 2; ++i)
            if (std::abs(v(i)) < 1e-15) v(i) = 0.0;
          roots.push_back(v);
        }
      }
      return make_root_system<Scalar>(2, std::move(roots), family, m);
    }
    case Family::custom:
      break;
  }
  throw std::invalid_argument("unsupported root system family");
}

template <typename Scalar>
struct ReflectionGroup {
  std::vector<MatrixX<Scalar>> elements;
  std::vector<MatrixX<Scalar>> generators;

  std::size_t order() const { return elements.size(); }

  template <typename Other>
  ReflectionGroup<Other> cast() const {
    ReflectionGroup<Other> g;
    for (const auto& m : elements) g.elements.push_back(m.template cast<Other>());
    for (const auto& m : generators) g.generators.push_back(m.template cast<Other>());
    return g;
  }
};

inline constexpr std::size_t kDefaultGroupCap = 1'000'000;

/// Closure of {s_v : v in R+} under multiplication (breadth first).
template <typename Scalar>
ReflectionGroup<Scalar> generate_group(const RootSystem<Scalar>& R, std::size_t cap = kDefaultGroupCap) {
  ReflectionGroup<Scalar> G;
  for (const auto& v : R.positive) G.generators.push_back(reflection_matrix(v));
  G.elements.push_back(MatrixX<Scalar>::Identity(R.dimension, R.dimension));
  for (std::size_t next = 0; next < G.elements.size(); ++next) {
    for (const auto& s : G.generators) {
      MatrixX<Scalar> candidate = s * G.elements[next];
      bool seen = false;
      for (const auto& e : G.elements)
        if (detail::same_matrix<Scalar>(e, candidate)) {
          seen = true;
          break;
        }
      if (seen) continue;
      if (G.elements.size() >= cap)
        throw GroupCapExceeded("reflection group exceeds order cap " + std::to_string(cap));
      G.elements.push_back(std::move(candidate));
    }
  }
  return G;
}

/// kappa stored per positive root, together with the orbit decomposition of
/// R+ (roots identified up to sign) under the group.
template <typename Scalar>
struct MultiplicityFunction {
  std::vector<Scalar> values;      // aligned with RootSystem::positive
  std::vector<int> orbit_of;       // orbit index of each positive root
  std::vector<Scalar> orbit_values;

  bool is_zero() const {
    for (const auto& v : values)
      if (v != Scalar(0)) return false;
    return true;
  }

  template <typename Other>
  MultiplicityFunction<Other> cast() const {
    MultiplicityFunction<Other> k;
    k.orbit_of = orbit_of;
    for (const auto& v : values) k.values.push_back(static_cast<Other>(v));
    for (const auto& v : orbit_values) k.orbit_values.push_back(static_cast<Other>(v));
    return k;
  }
};

/// Orbit index per positive root; orbits are numbered by their first member.
template <typename Scalar>
std::vector<int> root_orbits(const RootSystem<Scalar>& R, const ReflectionGroup<Scalar>& G) {
  const std::size_t n = R.positive.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& s : G.generators) {
      auto hit = find_up_to_sign(R.positive, VectorX<Scalar>(s * R.positive[i]));
      if (!hit) throw std::invalid_argument("root system is not invariant under its group");
      int a = find(static_cast<int>(i)), b = find(hit->first);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> orbit(n, -1);
  std::vector<int> label_of_root(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int r = find(static_cast<int>(i));
    if (label_of_root[r] < 0) label_of_root[r] = next++;
    orbit[i] = label_of_root[r];
  }
  return orbit;
}

inline std::string describe_vector(const auto& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += ScalarTraits<std::decay_t<decltype(v(0))>>::to_string(v(i));
  }
  return s + ")";
}

/// Validates kappa given on every positive root: nonnegative and constant on
/// G-orbits. The error message names the offending pair of roots.
template <typename Scalar>
MultiplicityFunction<Scalar> validate_multiplicity(const RootSystem<Scalar>& R, const ReflectionGroup<Scalar>& G,
                                                   const std::vector<Scalar>& per_positive_root) {
  if (per_positive_root.size() != R.positive.size())
    throw InvalidMultiplicity("kappa must be given for each of the " + std::to_string(R.positive.size()) +
                              " positive roots");
  for (std::size_t i = 0; i < R.positive.size(); ++i)
    if (per_positive_root[i] < Scalar(0))
      throw InvalidMultiplicity("kappa is negative on root " + describe_vector(R.positive[i]));
  for (std::size_t i = 0; i < R.positive.size(); ++i)
    for (const auto& s : G.generators) {
      auto hit = find_up_to_sign(R.positive, VectorX<Scalar>(s * R.positive[i]));
      if (hit && per_positive_root[i] != per_positive_root[hit->first])
        throw InvalidMultiplicity("kappa is not G-invariant: roots " + describe_vector(R.positive[i]) + " and " +
                                  describe_vector(R.positive[hit->first]) + " lie in one orbit");
    }
  MultiplicityFunction<Scalar> k;
  k.values = per_positive_root;
  k.orbit_of = root_orbits(R, G);
  int orbits = k.orbit_of.empty() ? 0 : *std::max_element(k.orbit_of.begin(), k.orbit_of.end()) + 1;
  k.orbit_values.assign(orbits, Scalar(0));
  for (std::size_t i = 0; i < R.positive.size(); ++i) k.orbit_values[k.orbit_of[i]] = per_positive_root[i];
  return k;
}

/// kappa given by one value per orbit, orbits ordered by first positive root.
template <typename Scalar>
MultiplicityFunction<Scalar> multiplicity_from_orbits(const RootSystem<Scalar>& R, const ReflectionGroup<Scalar>& G,
                                                      const std::vector<Scalar>& orbit_values) {
  std::vector<int> orbit = root_orbits(R, G);
  int orbits = orbit.empty() ? 0 : *std::max_element(orbit.begin(), orbit.end()) + 1;
  if (static_cast<int>(orbit_values.size()) != orbits)
    throw InvalidMultiplicity("expected " + std::to_string(orbits) + " kappa value(s), one per root orbit, got " +
                              std::to_string(orbit_values.size()));
  std::vector<Scalar> per_root;
  for (int o : orbit) per_root.push_back(orbit_values[o]);
  return validate_multiplicity(R, G, per_root);
}

template <typename Scalar>
struct DunklConstants {
  Scalar gamma_kappa;
  Scalar lambda_kappa;
};

/// gamma = sum of kappa over R+, lambda = gamma + (d - 2)/2; lambda must be > 0.
template <typename Scalar>
DunklConstants<Scalar> constants(const RootSystem<Scalar>& R, const MultiplicityFunction<Scalar>& kappa) {
  DunklConstants<Scalar> c{Scalar(0), Scalar(0)};
  for (const auto& v : kappa.values) c.gamma_kappa += v;
  c.lambda_kappa = c.gamma_kappa + ScalarTraits<Scalar>::from_ratio(R.dimension - 2, 2);
  if (!(c.lambda_kappa > Scalar(0)))
    throw InvalidMultiplicity("lambda_kappa = " + ScalarTraits<Scalar>::to_string(c.lambda_kappa) +
                              " must be positive (for d = 2 some kappa value must be positive)");
  return c;
}

/// w_kappa(x) = prod over R+ of |<v, x>|^(2 kappa(v)).
template <typename Scalar, typename Derived>
double weight_eval(const RootSystem<Scalar>& R, const MultiplicityFunction<Scalar>& kappa,
                   const Eigen::MatrixBase<Derived>& x) {
  double w = 1.0;
  for (std::size_t i = 0; i < R.positive.size(); ++i) {
    double k = to_double(kappa.values[i]);
    if (k == 0.0) continue;
    double dot = 0.0;
    for (int j = 0; j < R.dimension; ++j) dot += to_double(R.positive[i](j)) * to_double(Scalar(x(j)));
    w *= std::pow(std::abs(dot), 2.0 * k);
  }
  return w;
}

inline bool is_integer_valued(const Rational& k) { return denominator(k) == 1; }
inline bool is_integer_valued(double k) { return std::floor(k) == k; }

/// w_kappa as an exact polynomial; requires every kappa(v) to be an integer.
template <typename Scalar>
MultiPoly<Scalar> weight_as_polynomial(const RootSystem<Scalar>& R, const MultiplicityFunction<Scalar>& kappa) {
  const int d = R.dimension;
  MultiPoly<Scalar> w = MultiPoly<Scalar>::constant(d, Scalar(1));
  for (std::size_t i = 0; i < R.positive.size(); ++i) {
    const Scalar& k = kappa.values[i];
    if (!is_integer_valued(k))
      throw std::invalid_argument("weight is not a polynomial: 2*kappa = " + ScalarTraits<Scalar>::to_string(Scalar(2 * k)) +
                                  " is not an even integer");
    int power = static_cast<int>(to_double(k)) * 2;
    if (power == 0) continue;
    w = w * pow(MultiPoly<Scalar>::linear_form(R.positive[i]), power);
  }
  return w;
}

}  // namespace dunkl

#endif  // DUNKL_REFLECTION_HPP
