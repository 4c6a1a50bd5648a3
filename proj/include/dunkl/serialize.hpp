// JSON and CSV forms of the reports, and the text form of harmonic bases.
#ifndef DUNKL_SERIALIZE_HPP
#define DUNKL_SERIALIZE_HPP

#include "dunkl/fundamentality.hpp"
#include "dunkl/gegenbauer.hpp"
#include "dunkl/harmonic.hpp"

#include "json.hpp"

#include <sstream>
#include <string>

namespace dunkl {

inline constexpr int kSchemaVersion = 1;

std::string method_name(CoefficientMethod m);

nlohmann::ordered_json to_json(const CoefficientEntry& e);
nlohmann::ordered_json to_json(const CoefficientProfile& profile);
nlohmann::ordered_json to_json(const FundamentalityReport& report);
nlohmann::ordered_json to_json(const DensityReport& report);

/// Header `n,re,im,error_bound,flag`; im is always 0 (real-valued g).
std::string profile_csv(const CoefficientProfile& profile);

/// Header `node_count,residual`.
std::string density_csv(const DensityReport& report);

/// Degree, one polynomial per line in the multipoly text format, then the
/// Gram matrix row by row:
///
///   degree 2
///   elements 2
///   Y1 = ...
///   gram exact_monomial
///   g11 g12
///   g21 g22
template <typename Scalar>
std::string harmonic_basis_text(const HarmonicBasis<Scalar>& basis) {
  std::ostringstream out;
  out << "degree " << basis.degree << "\n";
  out << "elements " << basis.size() << "\n";
  for (std::size_t i = 0; i < basis.size(); ++i) out << "Y" << i + 1 << " = " << to_string(basis.elements[i]) << "\n";
  out << "gram " << basis.gram_method << "\n";
  for (Eigen::Index i = 0; i < basis.gram.rows(); ++i) {
    for (Eigen::Index j = 0; j < basis.gram.cols(); ++j)
      out << (j ? " " : "") << ScalarTraits<Scalar>::to_string(basis.gram(i, j));
    out << "\n";
  }
  return out.str();
}

}  // namespace dunkl

#endif  // DUNKL_SERIALIZE_HPP
