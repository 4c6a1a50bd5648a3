// The dunkl_fs command line: coeffs, fundamental, funk-hecke and density.
#ifndef DUNKL_TOOLS_CLI_HPP
#define DUNKL_TOOLS_CLI_HPP

#include "dunkl/fundamentality.hpp"
#include "dunkl/sphere.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dunkl::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kBackendFailure = 3,
  kUnsupportedGroup = 4,
  kNotFundamental = 10,
  kIndeterminate = 11,
  kFunkHeckeAboveThreshold = 12,
};

struct RunConfig {
  std::string family = "zd2";
  int dimension = 3;
  int dihedral_order = 4;  // I2(m) only
  std::vector<std::string> kappa = {"0"};  // one value per root orbit, or one value for all
  std::vector<std::string> g = {"exp"};
  double p = 2.0;
  int N = kDefaultTruncation;
  double epsilon = kDefaultZeroTolerance;
  SphereConfig sphere;
  int kernel_order = 0;  // 0: exact order for polynomials, 24 otherwise
  std::string format = "json";
  std::string output;  // empty: stdout, or $DUNKL_FS_OUTPUT_DIR/<command>.<format>
  // funk-hecke
  std::vector<int> degrees = {0, 1, 2, 3, 4};
  double threshold = 1e-6;
  int samples = 8;
  // density
  int target_degree = 1;
  std::vector<int> nodes = {6, 12, 24};
  std::optional<double> ridge;
  std::optional<std::string> scheme;
};

nlohmann::ordered_json config_to_json(const RunConfig& config);

/// Fields present in `j` override `base`. `j` may also be a report carrying
/// its configuration under "config".
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

/// Checks everything that can be checked without computing.
void validate(const RunConfig& config);

DunklContext<double> make_context(const RunConfig& config);

/// Entry point shared by the executable and the tests; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dunkl::cli

#endif  // DUNKL_TOOLS_CLI_HPP
