#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dunkl/serialize.hpp"

using namespace dunkl;
using Q = Rational;

TEST_CASE("profile CSV and JSON") {
  const auto profile = coefficient_profile(Function1D::polynomial({0.0, 1.0}), 0.5, 2);
  const std::string csv = profile_csv(profile);
  CHECK(csv.rfind("n,re,im,error_bound,flag\n", 0) == 0);
  CHECK(csv.find("\n1,0.3333333333333333,0,") != std::string::npos);
  CHECK(csv.find("\n0,0,0,0,zero\n") != std::string::npos);
  const auto j = to_json(profile);
  REQUIRE(j["entries"].size() == 3);
  CHECK(j["entries"][1]["flag"] == "nonzero");
  CHECK(j["entries"][2]["flag"] == "zero");
  CHECK(j["entries"][1]["im"] == 0.0);
}

TEST_CASE("fundamentality report JSON") {
  const auto ctx = DunklContext<double>::builtin(Family::zd2, 2, {1.0, 1.0});
  const auto report = is_fundamental(ctx, Function1D::constant(1.0), 3.0, 4);
  const auto j = to_json(report);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["verdict"] == "NOT_FUNDAMENTAL");
  CHECK(j["witnesses"] == nlohmann::json::array({1, 2, 3, 4}));
  CHECK(j["p"] == 3.0);
  CHECK(j["lambda_kappa"] == 2.0);
  CHECK(j["profiles"].size() == 1);
  // Stable key order and number formatting: dumping twice gives the same bytes.
  CHECK(j.dump() == to_json(is_fundamental(ctx, Function1D::constant(1.0), 3.0, 4)).dump());
}

TEST_CASE("density report CSV") {
  DensityReport r;
  r.node_counts = {6, 12};
  r.residuals = {1.0, 0.25};
  CHECK(density_csv(r) == "node_count,residual\n6,1\n12,0.25\n");
  const auto j = to_json(r);
  CHECK(j["kind"] == "density");
  CHECK(j["schema_version"] == kSchemaVersion);
}

TEST_CASE("harmonic basis text") {
  const auto ctx = DunklContext<Q>::builtin(Family::zd2, 2, {Q(1), Q(1)});
  const auto basis = harmonic_basis(ctx, 2);
  const std::string text = harmonic_basis_text(basis);
  CHECK(text.rfind("degree 2\nelements 2\n", 0) == 0);
  CHECK(text.find("gram exact_monomial\n") != std::string::npos);
  // Each element line parses back to the same polynomial.
  std::size_t pos = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string tag = "Y" + std::to_string(i + 1) + " = ";
    pos = text.find(tag, pos);
    REQUIRE(pos != std::string::npos);
    const std::size_t end = text.find('\n', pos);
    const auto parsed = parse_multipoly<Q>(text.substr(pos + tag.size(), end - pos - tag.size()), 2);
    CHECK(parsed == basis.elements[i]);
  }
}
