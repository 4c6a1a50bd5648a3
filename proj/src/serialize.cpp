#include "dunkl/serialize.hpp"

namespace dunkl {

using nlohmann::ordered_json;

std::string method_name(CoefficientMethod m) {
  return m == CoefficientMethod::analytic ? "analytic" : "quadrature";
}

ordered_json to_json(const CoefficientEntry& e) {
  return ordered_json{{"n", e.n},
                      {"re", e.value},
                      {"im", 0.0},
                      {"error_bound", e.error_bound},
                      {"scale", e.scale},
                      {"method", method_name(e.method)},
                      {"flag", flag_name(e.flag)}};
}

ordered_json to_json(const CoefficientProfile& profile) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : profile.entries) entries.push_back(to_json(e));
  return ordered_json{{"lambda", profile.lambda},
                      {"epsilon", profile.epsilon},
                      {"quadrature_nodes", profile.quadrature_nodes},
                      {"entries", entries}};
}

ordered_json to_json(const FundamentalityReport& report) {
  ordered_json profiles = ordered_json::array();
  for (const auto& p : report.profiles) profiles.push_back(to_json(p));
  return ordered_json{{"schema_version", kSchemaVersion},
                      {"kind", "fundamentality"},
                      {"g", report.g_descriptions},
                      {"lambda_kappa", report.lambda_kappa},
                      {"truncation", report.truncation},
                      {"p", report.p},
                      {"epsilon", report.epsilon},
                      {"verdict", verdict_name(report.verdict)},
                      {"witnesses", report.witnesses},
                      {"indeterminate", report.indeterminate},
                      {"funk_hecke_verifiable", report.funk_hecke_verifiable},
                      {"aggregate", to_json(report.aggregate)},
                      {"profiles", profiles}};
}

ordered_json to_json(const DensityReport& report) {
  return ordered_json{{"schema_version", kSchemaVersion},
                      {"kind", "density"},
                      {"target_degree", report.target_degree},
                      {"target", report.target},
                      {"target_norm", report.target_norm},
                      {"lambda_m", report.lambda_m},
                      {"node_counts", report.node_counts},
                      {"residuals", report.residuals},
                      {"ridges", report.ridges},
                      {"scheme", report.scheme},
                      {"seed", report.seed}};
}

std::string profile_csv(const CoefficientProfile& profile) {
  std::string out = "n,re,im,error_bound,flag\n";
  for (const auto& e : profile.entries)
    out += std::to_string(e.n) + "," + format_number(e.value) + ",0," + format_number(e.error_bound) + "," +
           flag_name(e.flag) + "\n";
  return out;
}

std::string density_csv(const DensityReport& report) {
  std::string out = "node_count,residual\n";
  for (std::size_t i = 0; i < report.node_counts.size(); ++i)
    out += std::to_string(report.node_counts[i]) + "," + format_number(report.residuals[i]) + "\n";
  return out;
}

}  // namespace dunkl
