#include "cli.hpp"

#include "dunkl/harmonic.hpp"
#include "dunkl/serialize.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

namespace dunkl::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kFooter = R"(CSV columns:
  coeffs       n,re,im,error_bound,flag   (im is 0: g is real-valued)
  fundamental  n,re,im,error_bound,flag   (aggregate sum of |Lambda_n| over all --g)
  funk-hecke   n,harmonics,lambda_n,residual
  density      node_count,residual

Exit codes: 0 ok or FUNDAMENTAL_UP_TO_N, 2 invalid configuration, 3 backend failure,
4 unsupported group, 10 NOT_FUNDAMENTAL, 11 INDETERMINATE, 12 Funk-Hecke residual above threshold.

Without --output, reports go to stdout, or to $DUNKL_FS_OUTPUT_DIR/<command>.<format> when that is set.)";

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> kappa_values(const RunConfig& config) {
  std::vector<double> out;
  for (const auto& k : config.kappa) out.push_back(ScalarTraits<double>::parse(k));
  return out;
}

std::vector<Function1D> functions(const RunConfig& config) {
  std::vector<Function1D> out;
  for (const auto& text : config.g) out.push_back(parse_function(text));
  return out;
}

Function1D single_function(const RunConfig& config, const std::string& command) {
  if (config.g.size() != 1) throw std::invalid_argument(command + " takes exactly one --g");
  return parse_function(config.g.front());
}

RunConfig resolved(RunConfig config) {
  if (config.sphere.order == 0) config.sphere.order = default_tensor_order(config.dimension);
  return config;
}

std::string output_path(const RunConfig& config, const std::string& command) {
  if (!config.output.empty()) return config.output;
  if (const char* dir = std::getenv("DUNKL_FS_OUTPUT_DIR"); dir && *dir)
    return (std::filesystem::path(dir) / (command + "." + config.format)).string();
  return {};
}

void emit(const RunConfig& config, const std::string& command, const std::string& text, std::ostream& out) {
  const std::string path = output_path(config, command);
  if (path.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream file(p, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  file << text;
  if (!file) throw std::runtime_error("failed writing " + path);
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

int cmd_coeffs(const RunConfig& config, std::ostream& out) {
  const auto ctx = make_context(config);
  const double lambda = ctx.lambda_kappa();
  const Function1D g = single_function(config, "coeffs").with_lambda(lambda);
  const CoefficientProfile profile = coefficient_profile(g, lambda, config.N, config.epsilon);
  if (config.format == "csv") {
    emit(config, "coeffs", profile_csv(profile), out);
  } else {
    ordered_json j{{"schema_version", kSchemaVersion},
                   {"kind", "coefficients"},
                   {"g", g.describe()},
                   {"profile", to_json(profile)},
                   {"config", config_to_json(config)}};
    emit(config, "coeffs", dump(j), out);
  }
  return kOk;
}

int cmd_fundamental(const RunConfig& config, std::ostream& out) {
  const auto ctx = make_context(config);
  const FundamentalityReport report = union_fundamental(ctx, functions(config), config.p, config.N, config.epsilon);
  if (config.format == "csv") {
    emit(config, "fundamental", profile_csv(report.aggregate), out);
  } else {
    ordered_json j = to_json(report);
    j["config"] = config_to_json(config);
    emit(config, "fundamental", dump(j), out);
  }
  switch (report.verdict) {
    case Verdict::fundamental_up_to_n: return kOk;
    case Verdict::not_fundamental: return kNotFundamental;
    case Verdict::indeterminate: return kIndeterminate;
  }
  return kIndeterminate;
}

int cmd_funk_hecke(const RunConfig& config, std::ostream& out) {
  const auto ctx = make_context(config);
  if (!ctx.has_explicit_intertwiner())
    throw UnsupportedGroup("funk-hecke needs kappa = 0 or the zd2 family: the kernel translates of the " +
                           family_name(ctx.root_system().family) +
                           " family with nonzero kappa have no explicit realization here. The fundamental "
                           "command still applies, since it only needs lambda_kappa");
  const Function1D g = single_function(config, "funk-hecke");
  if (config.sphere.backend == SphereBackend::exact_monomial)
    throw std::invalid_argument("funk-hecke needs the tensor_quadrature or monte_carlo backend");
  const SphereMeasure measure(ctx, config.sphere);
  const auto xs = node_set(ctx.dimension(), config.samples, NodeScheme::uniform_random, config.sphere.seed);
  const double lambda = ctx.lambda_kappa();

  ordered_json rows = ordered_json::array();
  std::string csv = "n,harmonics,lambda_n,residual\n";
  bool ok = true;
  for (int n : config.degrees) {
    const auto Ys = harmonic_elements(ctx, n);
    const auto residuals = funk_hecke_residuals(ctx, measure, g, n, Ys, xs, config.kernel_order);
    double worst = 0.0;
    for (double r : residuals) worst = std::max(worst, r);
    const double lambda_n = coefficient_profile(g.with_lambda(lambda), lambda, n).entries.back().value;
    ok = ok && worst <= config.threshold;
    rows.push_back(ordered_json{{"n", n}, {"harmonics", Ys.size()}, {"lambda_n", lambda_n}, {"residual", worst}});
    csv += std::to_string(n) + "," + std::to_string(Ys.size()) + "," + format_number(lambda_n) + "," +
           format_number(worst) + "\n";
  }
  if (config.format == "csv") {
    emit(config, "funk-hecke", csv, out);
  } else {
    ordered_json j{{"schema_version", kSchemaVersion},
                   {"kind", "funk_hecke"},
                   {"g", g.with_lambda(lambda).describe()},
                   {"lambda_kappa", lambda},
                   {"threshold", config.threshold},
                   {"passed", ok},
                   {"rows", rows},
                   {"config", config_to_json(config)}};
    emit(config, "funk-hecke", dump(j), out);
  }
  return ok ? kOk : kFunkHeckeAboveThreshold;
}

int cmd_density(const RunConfig& config, std::ostream& out) {
  const auto ctx = make_context(config);
  const Function1D g = single_function(config, "density");
  if (config.sphere.backend == SphereBackend::exact_monomial)
    throw std::invalid_argument("density needs the tensor_quadrature or monte_carlo backend");
  const SphereMeasure measure(ctx, config.sphere);
  DensityOptions options;
  if (config.ridge) options.ridge = *config.ridge;
  if (config.scheme) options.scheme = parse_scheme(*config.scheme);
  options.seed = config.sphere.seed;
  options.kernel_order = config.kernel_order;
  const DensityReport report = density_demo(ctx, measure, g, config.target_degree, config.nodes, options);
  if (config.format == "csv") {
    emit(config, "density", density_csv(report), out);
  } else {
    ordered_json j = to_json(report);
    j["g"] = g.with_lambda(ctx.lambda_kappa()).describe();
    j["config"] = config_to_json(config);
    emit(config, "density", dump(j), out);
  }
  return kOk;
}

// Flag values before merging; each registered option knows how to copy its
// value into a RunConfig when it was given on the command line.
struct Flags {
  std::string config_path, family, kappa, backend, format, output, scheme;
  std::vector<std::string> g;
  int dimension = 0, dihedral = 0, N = 0, order = 0, kernel_order = 0, samples = 0, target_degree = 0;
  double p = 0, epsilon = 0, threshold = 0, ridge = 0;
  std::size_t mc_samples = 0;
  std::uint64_t seed = 0;
  std::vector<int> degrees, nodes;
};

using Setter = std::pair<CLI::Option*, std::function<void(RunConfig&)>>;

void add_common(CLI::App* sub, Flags& f, std::vector<Setter>& setters) {
  sub->add_option("--config", f.config_path, "JSON configuration (or a previous report); flags override it")
      ->check(CLI::ExistingFile);
  auto add = [&](CLI::Option* o, std::function<void(RunConfig&)> apply) { setters.emplace_back(o, std::move(apply)); };
  add(sub->add_option("--family", f.family, "root system family: zd2, a, b, d, i2"),
      [&f](RunConfig& c) { c.family = f.family; });
  add(sub->add_option("-d,--dimension", f.dimension, "dimension d"), [&f](RunConfig& c) { c.dimension = f.dimension; });
  add(sub->add_option("--dihedral", f.dihedral, "m for the dihedral family i2"),
      [&f](RunConfig& c) { c.dihedral_order = f.dihedral; });
  add(sub->add_option("--kappa", f.kappa, "kappa per root orbit, comma separated (1/2 allowed); one value fills all"),
      [&f](RunConfig& c) { c.kappa = split(f.kappa); });
  add(sub->add_option("--g", f.g, "function of t: poly c0,c1,... | gegen n | exp | cos w | step a | sum ... (repeatable)"),
      [&f](RunConfig& c) { c.g = f.g; });
  add(sub->add_option("-p", f.p, "L_p index, p >= 1 (recorded)"), [&f](RunConfig& c) { c.p = f.p; });
  add(sub->add_option("-N", f.N, "truncation degree"), [&f](RunConfig& c) { c.N = f.N; });
  add(sub->add_option("--epsilon", f.epsilon, "relative zero tolerance"),
      [&f](RunConfig& c) { c.epsilon = f.epsilon; });
  add(sub->add_option("--backend", f.backend, "sphere backend: tensor_quadrature, monte_carlo, exact_monomial"),
      [&f](RunConfig& c) { c.sphere.backend = parse_backend(f.backend); });
  add(sub->add_option("--order", f.order, "tensor quadrature nodes per angular axis (0: default)"),
      [&f](RunConfig& c) { c.sphere.order = f.order; });
  add(sub->add_option("--kernel-order", f.kernel_order, "Gauss-Jacobi nodes per axis for kernel translates (0: auto)"),
      [&f](RunConfig& c) { c.kernel_order = f.kernel_order; });
  add(sub->add_option("--mc-samples", f.mc_samples, "Monte Carlo sample count"),
      [&f](RunConfig& c) { c.sphere.mc_samples = f.mc_samples; });
  add(sub->add_option("--seed", f.seed, "seed for Monte Carlo and random nodes"),
      [&f](RunConfig& c) { c.sphere.seed = f.seed; });
  add(sub->add_option("--format", f.format, "json or csv"), [&f](RunConfig& c) { c.format = f.format; });
  add(sub->add_option("-o,--output", f.output, "output file"), [&f](RunConfig& c) { c.output = f.output; });
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

ordered_json config_to_json(const RunConfig& c) {
  const RunConfig r = resolved(c);
  return ordered_json{
      {"group", {{"family", r.family}, {"dimension", r.dimension}, {"dihedral_order", r.dihedral_order}, {"kappa", r.kappa}}},
      {"g", r.g},
      {"p", r.p},
      {"N", r.N},
      {"epsilon", r.epsilon},
      {"quadrature",
       {{"backend", backend_name(r.sphere.backend)},
        {"order", r.sphere.order},
        {"kernel_order", r.kernel_order},
        {"mc_samples", r.sphere.mc_samples},
        {"seed", r.sphere.seed}}},
      {"output", {{"format", r.format}, {"path", r.output}}},
      {"funk_hecke", {{"degrees", r.degrees}, {"threshold", r.threshold}, {"samples", r.samples}}},
      {"density",
       {{"target_degree", r.target_degree},
        {"nodes", r.nodes},
        {"ridge", r.ridge ? json(*r.ridge) : json(nullptr)},
        {"scheme", r.scheme ? json(*r.scheme) : json(nullptr)}}}};
}

RunConfig config_from_json(const json& in, RunConfig c) {
  const json& j = in.contains("config") ? in.at("config") : in;
  require(j.is_object(), "configuration must be a JSON object");
  if (j.contains("group")) {
    const json& grp = j.at("group");
    if (grp.contains("family")) c.family = grp.at("family").get<std::string>();
    if (grp.contains("dimension")) c.dimension = grp.at("dimension").get<int>();
    if (grp.contains("dihedral_order")) c.dihedral_order = grp.at("dihedral_order").get<int>();
    if (grp.contains("kappa")) {
      c.kappa.clear();
      const json& k = grp.at("kappa");
      for (const auto& v : k.is_array() ? k : json::array({k}))
        c.kappa.push_back(v.is_string() ? v.get<std::string>() : format_number(v.get<double>()));
    }
  }
  if (j.contains("g")) {
    const json& g = j.at("g");
    c.g = g.is_array() ? g.get<std::vector<std::string>>() : std::vector<std::string>{g.get<std::string>()};
  }
  if (j.contains("p")) c.p = j.at("p").get<double>();
  if (j.contains("N")) c.N = j.at("N").get<int>();
  if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
  if (j.contains("quadrature")) {
    const json& q = j.at("quadrature");
    if (q.contains("backend")) c.sphere.backend = parse_backend(q.at("backend").get<std::string>());
    if (q.contains("order")) c.sphere.order = q.at("order").get<int>();
    if (q.contains("kernel_order")) c.kernel_order = q.at("kernel_order").get<int>();
    if (q.contains("mc_samples")) c.sphere.mc_samples = q.at("mc_samples").get<std::size_t>();
    if (q.contains("seed")) c.sphere.seed = q.at("seed").get<std::uint64_t>();
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    if (o.contains("format")) c.format = o.at("format").get<std::string>();
    if (o.contains("path")) c.output = o.at("path").get<std::string>();
  }
  if (j.contains("funk_hecke")) {
    const json& f = j.at("funk_hecke");
    if (f.contains("degrees")) c.degrees = f.at("degrees").get<std::vector<int>>();
    if (f.contains("threshold")) c.threshold = f.at("threshold").get<double>();
    if (f.contains("samples")) c.samples = f.at("samples").get<int>();
  }
  if (j.contains("density")) {
    const json& d = j.at("density");
    if (d.contains("target_degree")) c.target_degree = d.at("target_degree").get<int>();
    if (d.contains("nodes")) c.nodes = d.at("nodes").get<std::vector<int>>();
    if (d.contains("ridge"))
      c.ridge = d.at("ridge").is_null() ? std::nullopt : std::optional<double>(d.at("ridge").get<double>());
    if (d.contains("scheme"))
      c.scheme = d.at("scheme").is_null() ? std::nullopt : std::optional<std::string>(d.at("scheme").get<std::string>());
  }
  return c;
}

void validate(const RunConfig& c) {
  const Family family = parse_family(c.family);
  require(family != Family::custom, "custom root systems are not available from the command line");
  if (family == Family::i2)
    require(c.dimension == 2, "the i2 family lives in dimension 2");
  else
    require(c.dimension >= 2, "dimension must be at least 2");
  require(!c.kappa.empty(), "kappa must not be empty");
  for (double k : kappa_values(c)) require(std::isfinite(k) && k >= 0.0, "kappa values must be finite and nonnegative");
  require(!c.g.empty(), "at least one --g is required");
  functions(c);
  require(c.p >= 1.0 && std::isfinite(c.p), "p must lie in [1, inf)");
  require(c.N >= 0, "N must be nonnegative");
  require(c.epsilon > 0.0, "epsilon must be positive");
  require(c.sphere.order >= 0, "order must be nonnegative");
  require(c.sphere.mc_samples >= 2, "mc_samples must be at least 2");
  require(c.kernel_order >= 0, "kernel order must be nonnegative");
  require(c.format == "json" || c.format == "csv", "format must be json or csv");
  for (int n : c.degrees) require(n >= 0, "degrees must be nonnegative");
  require(c.threshold > 0.0, "threshold must be positive");
  require(c.samples >= 1, "samples must be positive");
  require(c.target_degree >= 0, "target degree must be nonnegative");
  require(!c.nodes.empty(), "node counts must not be empty");
  for (int n : c.nodes) require(n >= 1, "node counts must be positive");
  if (c.ridge) require(*c.ridge >= 0.0, "ridge must be nonnegative");
  if (c.scheme) parse_scheme(*c.scheme);
}

DunklContext<double> make_context(const RunConfig& c) {
  const Family family = parse_family(c.family);
  const int param = family == Family::i2 ? c.dihedral_order : c.dimension;
  auto R = builtin_root_system<double>(family, param);
  auto G = generate_group(R);
  std::vector<double> k = kappa_values(c);
  const auto orbit = root_orbits(R, G);
  const int orbits = orbit.empty() ? 0 : *std::max_element(orbit.begin(), orbit.end()) + 1;
  if (k.size() == 1 && orbits > 1) k.assign(orbits, k.front());
  auto kappa = multiplicity_from_orbits(R, G, k);
  return DunklContext<double>(std::move(R), std::move(G), std::move(kappa));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dunkl kernel translates: Gegenbauer coefficients, fundamentality verdicts, Funk-Hecke checks "
               "and density demonstrations",
               "dunkl_fs"};
  app.footer(kFooter);
  app.require_subcommand(1);
  Flags f;
  std::vector<Setter> setters;

  auto* coeffs = app.add_subcommand("coeffs", "Lambda_n(g) for n = 0..N with zero flags");
  auto* fundamental = app.add_subcommand("fundamental", "fundamentality verdict (union over repeated --g)");
  auto* funk = app.add_subcommand("funk-hecke", "Funk-Hecke residuals per degree (kappa = 0 or zd2)");
  auto* density = app.add_subcommand("density", "least-squares density demonstration");
  for (auto* sub : {coeffs, fundamental, funk, density}) add_common(sub, f, setters);
  setters.emplace_back(funk->add_option("--degrees", f.degrees, "harmonic degrees, comma separated")->delimiter(','),
                       [&f](RunConfig& c) { c.degrees = f.degrees; });
  setters.emplace_back(funk->add_option("--threshold", f.threshold, "residual threshold for exit 0"),
                       [&f](RunConfig& c) { c.threshold = f.threshold; });
  setters.emplace_back(funk->add_option("--samples", f.samples, "number of random x"),
                       [&f](RunConfig& c) { c.samples = f.samples; });
  setters.emplace_back(density->add_option("-m,--target-degree", f.target_degree, "degree of the target harmonic"),
                       [&f](RunConfig& c) { c.target_degree = f.target_degree; });
  setters.emplace_back(density->add_option("--nodes", f.nodes, "node counts, comma separated")->delimiter(','),
                       [&f](RunConfig& c) { c.nodes = f.nodes; });
  setters.emplace_back(density->add_option("--ridge", f.ridge, "absolute ridge (default 1e-10 trace/size)"),
                       [&f](RunConfig& c) { c.ridge = f.ridge; });
  setters.emplace_back(density->add_option("--scheme", f.scheme, "node scheme: generalized_spiral, uniform_random"),
                       [&f](RunConfig& c) { c.scheme = f.scheme; });

  std::vector<const char*> argv{"dunkl_fs"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig config;
  try {
    if (!f.config_path.empty()) {
      std::ifstream in(f.config_path);
      config = config_from_json(json::parse(in));
    }
    for (const auto& [option, apply] : setters)
      if (option->count() > 0) apply(config);
    validate(config);
    make_context(config);
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (coeffs->parsed()) return cmd_coeffs(config, out);
    if (fundamental->parsed()) return cmd_fundamental(config, out);
    if (funk->parsed()) return cmd_funk_hecke(config, out);
    return cmd_density(config, out);
  } catch (const UnsupportedGroup& e) {
    err << "unsupported group: " << e.what() << "\n";
    return kUnsupportedGroup;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "backend failure: " << e.what() << "\n";
    return kBackendFailure;
  }
}

}  // namespace dunkl::cli
