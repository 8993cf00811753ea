#include "leggett/harness.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "leggett/certify.hpp"
#include "leggett/estimation.hpp"
#include "leggett/io.hpp"
#include "leggett/optimize.hpp"
#include "leggett/quantum.hpp"

namespace leggett {

using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::uint64_t kSettingsStream = 0x5e77196500000000ull;
constexpr std::uint64_t kModelStream = 0x30de100000000000ull;
constexpr std::uint64_t kScenarioStream = 0xc454000000000000ull;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> grid;
  std::optional<double> k_sigma;
};

const std::set<std::string> kCommonKeys = {"seed", "output", "samples", "grid", "k_sigma"};

std::string format_real(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

json load_config(const CommonFlags& flags, const std::set<std::string>& allowed) {
  json cfg = json::object();
  if (!flags.config_path.empty()) {
    try {
      cfg = read_json_file(flags.config_path);
    } catch (const LoadError& e) {
      throw ConfigError(e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config: top level must be a JSON object");
  }
  for (const auto& [key, value] : cfg.items()) {
    if (!allowed.contains(key) && !kCommonKeys.contains(key)) {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  if (flags.seed) cfg["seed"] = *flags.seed;
  if (flags.output) cfg["output"] = *flags.output;
  if (flags.samples) cfg["samples"] = *flags.samples;
  if (flags.grid) cfg["grid"] = *flags.grid;
  if (flags.k_sigma) cfg["k_sigma"] = *flags.k_sigma;
  if (!cfg.contains("seed")) cfg["seed"] = kDefaultSeed;
  return cfg;
}

std::uint64_t get_seed(const json& cfg) {
  const json& s = cfg.at("seed");
  if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
    throw ConfigError("config: 'seed' must be a nonnegative integer");
  }
  return s.get<std::uint64_t>();
}

std::size_t get_count(const json& cfg, const char* key, std::size_t fallback, bool allow_zero = false) {
  if (!cfg.contains(key)) return fallback;
  const json& v = cfg.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string("config: '") + key + "' must be a nonnegative integer");
  }
  const auto n = v.get<std::size_t>();
  if (n == 0 && !allow_zero) throw ConfigError(std::string("config: '") + key + "' must be at least 1");
  return n;
}

double get_real(const json& cfg, const char* key, double fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg.at(key).is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
  return cfg.at(key).get<double>();
}

bool get_bool(const json& cfg, const char* key, bool fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg.at(key).is_boolean()) throw ConfigError(std::string("config: '") + key + "' must be a boolean");
  return cfg.at(key).get<bool>();
}

std::string get_string(const json& cfg, const char* key, const std::string& fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg.at(key).is_string()) throw ConfigError(std::string("config: '") + key + "' must be a string");
  return cfg.at(key).get<std::string>();
}

UnitVector3 config_vector(const json& doc, const char* what) {
  try {
    return vector_from_json(doc);
  } catch (const LoadError& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

// The output path is excluded so that a run's bytes do not depend on where
// they are written.
std::string run_hash(const json& cfg) {
  json copy = cfg;
  copy.erase("output");
  return config_hash(copy);
}

std::string metadata(std::string_view command, const json& cfg) {
  std::ostringstream os;
  os << kToolName << ' ' << kToolVersion << " command=" << command << " seed=" << get_seed(cfg)
     << " config_hash=" << run_hash(cfg);
  return os.str();
}

void emit(const json& cfg, std::ostream& out, const std::string& text) {
  const std::string path = get_string(cfg, "output", "");
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot write output file " + path);
  file << text;
}

LeggettModel resolve_model(const json& cfg, std::uint64_t seed) {
  if (cfg.contains("model") && cfg.contains("generator")) {
    throw ConfigError("config: give either 'model' or 'generator', not both");
  }
  if (cfg.contains("model")) {
    if (!cfg.at("model").is_string()) throw ConfigError("config: 'model' must be a file path");
    return load_model(cfg.at("model").get<std::string>());
  }
  if (!cfg.contains("generator")) throw ConfigError("config: a 'model' file or a 'generator' is required");
  const json& gen = cfg.at("generator");
  if (!gen.is_object()) throw ConfigError("generator: expected an object");
  for (const auto& [key, value] : gen.items()) {
    static const std::set<std::string> keys = {"name", "u", "v", "side", "atoms", "coupling"};
    if (!keys.contains(key)) throw ConfigError("generator: unknown key '" + key + "'");
  }
  Coupling coupling = Coupling::independent;
  try {
    coupling = coupling_from_string(get_string(gen, "coupling", "independent"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("generator: ") + e.what());
  }
  const std::string name = get_string(gen, "name", "");
  if (name == "point-mass") {
    if (!gen.contains("u") || !gen.contains("v")) throw ConfigError("generator point-mass: needs 'u' and 'v'");
    return {point_mass(config_vector(gen.at("u"), "generator u"), config_vector(gen.at("v"), "generator v")),
            coupling};
  }
  if (name == "isotropic") return {isotropic_product(get_count(gen, "side", 32)), coupling};
  if (name == "isotropic-random") {
    RngStream rng(RngSeed{seed, kModelStream});
    return {isotropic_random(get_count(gen, "atoms", 1000), rng), coupling};
  }
  if (name == "mirrored") return {mirrored(get_count(gen, "atoms", 1000)), coupling};
  throw ConfigError("generator: unknown name '" + name +
                    "' (expected point-mass, isotropic, isotropic-random or mirrored)");
}

std::vector<SettingsPair> resolve_settings(const json& cfg, std::uint64_t seed) {
  const int sources = static_cast<int>(cfg.contains("settings")) +
                      static_cast<int>(cfg.contains("random_settings")) +
                      static_cast<int>(cfg.contains("family"));
  if (sources != 1) {
    throw ConfigError("config: give exactly one of 'settings', 'random_settings' or 'family'");
  }
  std::vector<SettingsPair> settings;
  if (cfg.contains("settings")) {
    const json& list = cfg.at("settings");
    if (!list.is_array() || list.empty()) throw ConfigError("config: 'settings' must be a non-empty array");
    for (const json& entry : list) {
      if (!entry.is_object() || !entry.contains("a") || !entry.contains("b") || entry.size() != 2) {
        throw ConfigError("config: each settings entry is {\"a\": [x,y,z], \"b\": [x,y,z]}");
      }
      settings.push_back({config_vector(entry.at("a"), "settings a"), config_vector(entry.at("b"), "settings b")});
    }
  } else if (cfg.contains("random_settings")) {
    RngStream rng(RngSeed{seed, kSettingsStream});
    const std::size_t count = get_count(cfg, "random_settings", 1);
    for (std::size_t i = 0; i < count; ++i) {
      const UnitVector3 a = random_unit_vector(rng);
      const UnitVector3 b = random_unit_vector(rng);
      settings.push_back({a, b});
    }
  } else {
    SettingsFamily family;
    try {
      family = family_by_name(get_string(cfg, "family", ""));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (!cfg.contains("parameters") || !cfg.at("parameters").is_array()) {
      throw ConfigError("config: 'family' needs a 'parameters' array");
    }
    std::vector<double> params;
    for (const json& p : cfg.at("parameters")) {
      if (!p.is_number()) throw ConfigError("config: 'parameters' must be numbers");
      params.push_back(p.get<double>());
    }
    if (params.size() != family.dimension) {
      throw ConfigError("config: family " + family.name + " takes " + std::to_string(family.dimension) +
                        " parameters");
    }
    settings = family.map(params);
  }
  return settings;
}

void append_vectors(std::ostringstream& os, const SettingsPair& s) {
  for (double x : s.a.components()) os << ',' << format_real(x);
  for (double x : s.b.components()) os << ',' << format_real(x);
}

json settings_to_json(const std::vector<SettingsPair>& settings) {
  json list = json::array();
  for (const auto& s : settings) list.push_back({{"a", vector_to_json(s.a)}, {"b", vector_to_json(s.b)}});
  return list;
}

// simulate ------------------------------------------------------------------

int cmd_simulate(const CommonFlags& flags, std::ostream& out) {
  const json cfg = load_config(flags, {"model", "generator", "settings", "random_settings", "family", "parameters"});
  const std::uint64_t seed = get_seed(cfg);
  const std::size_t n = get_count(cfg, "samples", 100000);
  const double k_sigma = get_real(cfg, "k_sigma", kDefaultKSigma);
  if (!(k_sigma >= 0.0)) throw ConfigError("config: 'k_sigma' must be nonnegative");
  const LeggettModel model = resolve_model(cfg, seed);
  const auto settings = resolve_settings(cfg, seed);

  std::ostringstream os;
  os << "# " << metadata("simulate", cfg) << '\n';
  os << "experiment_id,ax,ay,az,bx,by,bz,n,mean,se,exact,lower,upper,margin,verdict\n";
  bool all_satisfied = true;
  for (std::size_t j = 0; j < settings.size(); ++j) {
    const SettingsPair& s = settings[j];
    const CorrelationEstimate est = estimate_correlation(model, s, n, RngSeed{seed, j});
    const LeggettBounds bounds = averaged_bounds(model.distribution, s);
    const BoundsVerdict verdict = check_bounds(est.mean, est.se, bounds, k_sigma);
    all_satisfied = all_satisfied && verdict.satisfied;
    os << j;
    append_vectors(os, s);
    os << ',' << est.n << ',' << format_real(est.mean) << ',' << format_real(est.se) << ','
       << format_real(exact_model_correlation(model, s)) << ',' << format_real(bounds.lower) << ','
       << format_real(bounds.upper) << ',' << format_real(verdict.margin) << ','
       << (verdict.satisfied ? "satisfied" : "violated") << '\n';
  }
  emit(cfg, out, os.str());
  return all_satisfied ? kExitSuccess : kExitVerdictFailure;
}

// bounds --------------------------------------------------------------------

int cmd_bounds(const CommonFlags& flags, std::ostream& out) {
  const json cfg = load_config(flags, {"model", "generator", "settings", "random_settings", "family", "parameters"});
  const std::uint64_t seed = get_seed(cfg);
  const LeggettModel model = resolve_model(cfg, seed);
  const auto settings = resolve_settings(cfg, seed);

  std::ostringstream os;
  os << "# " << metadata("bounds", cfg) << '\n';
  os << "experiment_id,ax,ay,az,bx,by,bz,exact,lower,upper,margin,verdict\n";
  bool all_satisfied = true;
  for (std::size_t j = 0; j < settings.size(); ++j) {
    const SettingsPair& s = settings[j];
    const double exact = exact_model_correlation(model, s);
    const LeggettBounds bounds = averaged_bounds(model.distribution, s);
    BoundsVerdict verdict = check_bounds(exact, 0.0, bounds, 0.0);
    verdict.satisfied = bounds.contains(exact);
    all_satisfied = all_satisfied && verdict.satisfied;
    os << j;
    append_vectors(os, s);
    os << ',' << format_real(exact) << ',' << format_real(bounds.lower) << ',' << format_real(bounds.upper)
       << ',' << format_real(verdict.margin) << ',' << (verdict.satisfied ? "satisfied" : "violated") << '\n';
  }
  emit(cfg, out, os.str());
  return all_satisfied ? kExitSuccess : kExitVerdictFailure;
}

// chsh ----------------------------------------------------------------------

ChshScenario resolve_scenario(const json& cfg) {
  if (!cfg.contains("scenario") || cfg.at("scenario") == "standard") return standard_chsh_scenario();
  const json& sc = cfg.at("scenario");
  if (!sc.is_object() || sc.size() != 4 || !sc.contains("a") || !sc.contains("a_prime") || !sc.contains("b") ||
      !sc.contains("b_prime")) {
    throw ConfigError("config: 'scenario' is \"standard\" or {a, a_prime, b, b_prime}");
  }
  return {config_vector(sc.at("a"), "scenario a"), config_vector(sc.at("a_prime"), "scenario a_prime"),
          config_vector(sc.at("b"), "scenario b"), config_vector(sc.at("b_prime"), "scenario b_prime")};
}

int cmd_chsh(const CommonFlags& flags, std::ostream& out) {
  const json cfg =
      load_config(flags, {"scenario", "model", "generator", "correlation", "random_scenarios"});
  const std::uint64_t seed = get_seed(cfg);
  const ChshScenario scenario = resolve_scenario(cfg);
  const std::string correlation = get_string(cfg, "correlation", "model");
  if (correlation != "model" && correlation != "zero") {
    throw ConfigError("config: 'correlation' must be \"model\" or \"zero\"");
  }
  const bool has_model = cfg.contains("model") || cfg.contains("generator");
  if (correlation == "model" && !has_model && cfg.contains("random_scenarios")) {
    throw ConfigError("config: 'random_scenarios' needs a model");
  }

  json report = {{"tool", std::string(kToolName)},
                 {"version", std::string(kToolVersion)},
                 {"seed", seed},
                 {"config_hash", run_hash(cfg)},
                 {"classical_bound", 2.0},
                 {"singlet", {{"S", chsh_value(scenario, singlet_correlation)}}}};
  int status = kExitSuccess;

  if (correlation == "zero") {
    report["stub"] = {{"S", chsh_value(scenario, [](const SettingsPair&) { return 0.0; })}};
  } else if (has_model) {
    const LeggettModel model = resolve_model(cfg, seed);
    const auto exact = [&model](const SettingsPair& s) { return exact_model_correlation(model, s); };
    const std::size_t n = get_count(cfg, "samples", 100000);
    const SettingsPair terms[4] = {{scenario.a, scenario.b},
                                   {scenario.a, scenario.b_prime},
                                   {scenario.a_prime, scenario.b},
                                   {scenario.a_prime, scenario.b_prime}};
    double estimate = 0.0;
    double variance = 0.0;
    for (std::size_t t = 0; t < 4; ++t) {
      const auto est = estimate_correlation(model, terms[t], n, RngSeed{seed, t});
      estimate += (t == 3 ? -1.0 : 1.0) * est.mean;
      variance += est.se * est.se;
    }
    json model_report = {{"coupling", std::string(to_string(model.coupling))},
                         {"S_exact", chsh_value(scenario, exact)},
                         {"S_estimate", estimate},
                         {"se", std::sqrt(variance)},
                         {"samples_per_term", n}};
    if (cfg.contains("random_scenarios")) {
      const std::size_t count = get_count(cfg, "random_scenarios", 1);
      RngStream rng(RngSeed{seed, kScenarioStream});
      double max_model = 0.0;
      double max_singlet = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        ChshScenario sc;
        sc.a = random_unit_vector(rng);
        sc.a_prime = random_unit_vector(rng);
        sc.b = random_unit_vector(rng);
        sc.b_prime = random_unit_vector(rng);
        max_model = std::max(max_model, std::abs(chsh_value(sc, exact)));
        max_singlet = std::max(max_singlet, std::abs(chsh_value(sc, singlet_correlation)));
      }
      model_report["random_scenarios"] = count;
      model_report["max_abs_S_exact"] = max_model;
      model_report["max_abs_S_singlet"] = max_singlet;
      if (model.coupling == Coupling::independent && max_model > 2.0 + 1e-9) status = kExitVerdictFailure;
    }
    if (model.coupling == Coupling::independent && std::abs(chsh_value(scenario, exact)) > 2.0 + 1e-9) {
      status = kExitVerdictFailure;
    }
    report["model"] = model_report;
  }
  emit(cfg, out, report.dump(2) + "\n");
  return status;
}

// certify -------------------------------------------------------------------

std::vector<TargetConstraint> targets_from_file(const std::string& path) {
  json doc;
  try {
    doc = read_json_file(path);
  } catch (const LoadError& e) {
    throw ConfigError(e.what());
  }
  if (!doc.is_array() || doc.empty()) throw ConfigError(path + ": expected a non-empty array of targets");
  std::vector<TargetConstraint> targets;
  for (const json& t : doc) {
    if (!t.is_object() || !t.contains("a") || !t.contains("b") || !t.contains("correlation") ||
        !t.at("correlation").is_number()) {
      throw ConfigError(path + ": each target needs 'a', 'b' and a numeric 'correlation'");
    }
    for (const auto& [key, value] : t.items()) {
      static const std::set<std::string> keys = {"a", "b", "correlation", "marginal_a", "marginal_b"};
      if (!keys.contains(key)) throw ConfigError(path + ": unknown target key '" + key + "'");
    }
    TargetConstraint c{{config_vector(t.at("a"), "target a"), config_vector(t.at("b"), "target b")},
                       t.at("correlation").get<double>(), std::nullopt, std::nullopt};
    if (t.contains("marginal_a")) c.marginal_a = get_real(t, "marginal_a", 0.0);
    if (t.contains("marginal_b")) c.marginal_b = get_real(t, "marginal_b", 0.0);
    targets.push_back(c);
  }
  return targets;
}

CandidateGrid resolve_grid(const json& cfg, std::size_t fallback_total) {
  if (cfg.contains("grid_side") || cfg.contains("grid_mirrored")) {
    if (cfg.contains("grid")) throw ConfigError("config: 'grid' conflicts with 'grid_side'/'grid_mirrored'");
    const std::size_t side = get_count(cfg, "grid_side", 0, true);
    const std::size_t mirrored_count = get_count(cfg, "grid_mirrored", 0, true);
    if (side == 0 && mirrored_count == 0) throw ConfigError("config: the atom grid is empty");
    return certification_grid(side, mirrored_count);
  }
  return certification_grid(get_count(cfg, "grid", fallback_total));
}

int cmd_certify(const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  const json cfg = load_config(flags, {"settings", "random_settings", "family", "parameters", "targets", "model",
                                       "generator", "include_marginals", "grid_side", "grid_mirrored"});
  const std::uint64_t seed = get_seed(cfg);
  const bool marginals = get_bool(cfg, "include_marginals", false);
  CandidateGrid grid = resolve_grid(cfg, 2000);

  const std::string source = get_string(cfg, "targets", "singlet");
  std::vector<TargetConstraint> targets;
  if (source == "singlet") {
    targets = singlet_targets(resolve_settings(cfg, seed), marginals);
  } else if (source == "model") {
    targets = model_targets(resolve_model(cfg, seed), resolve_settings(cfg, seed), marginals);
  } else {
    targets = targets_from_file(source);
  }

  CertificationProblem problem;
  try {
    problem = build_problem(std::move(grid), std::move(targets), marginals);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const FeasibilityCertificate cert = solve(problem);
  const bool verified = verify_certificate(problem, cert);

  json doc = {{"tool", std::string(kToolName)},
              {"version", std::string(kToolVersion)},
              {"seed", seed},
              {"config_hash", run_hash(cfg)},
              {"verified", verified},
              {"certificate", certificate_to_json(cert)},
              {"problem", problem_to_json(problem)}};
  emit(cfg, out, doc.dump(2) + "\n");

  std::ostream& summary = cfg.contains("output") ? out : err;
  summary << "# " << metadata("certify", cfg) << '\n'
          << "status=" << (cert.status == FeasibilityStatus::feasible ? "FEASIBLE" : "INFEASIBLE")
          << " atoms=" << problem.grid.size() << " pairs=" << problem.constraints.size()
          << " value=" << format_real(cert.value);
  if (cert.status == FeasibilityStatus::infeasible) summary << " margin=" << format_real(cert.margin);
  summary << " verified=" << (verified ? "true" : "false") << '\n';
  return verified ? kExitSuccess : kExitVerdictFailure;
}

// optimize ------------------------------------------------------------------

int cmd_optimize(const CommonFlags& flags, std::ostream& out) {
  const json cfg = load_config(flags, {"family", "budget", "include_marginals", "initial_step", "min_step",
                                       "stability_factor", "robust"});
  const std::uint64_t seed = get_seed(cfg);
  SettingsFamily family;
  try {
    family = family_by_name(get_string(cfg, "family", "pairs:6"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  OptimizerOptions options;
  options.budget = get_count(cfg, "budget", 10000);
  options.include_marginals = get_bool(cfg, "include_marginals", false);
  options.initial_step = get_real(cfg, "initial_step", options.initial_step);
  options.min_step = get_real(cfg, "min_step", options.min_step);
  if (!(options.initial_step > 0.0) || !(options.min_step > 0.0)) {
    throw ConfigError("config: step sizes must be positive");
  }
  const std::size_t grid_atoms = get_count(cfg, "grid", 500);
  options.stability_factor = get_count(cfg, "stability_factor", 4, true);
  options.robust = get_bool(cfg, "robust", true);
  if (options.robust && options.stability_factor == 0) {
    throw ConfigError("config: robust search needs a nonzero stability_factor");
  }

  const CandidateGrid grid = certification_grid(grid_atoms);
  const OptimizationResult result = optimize_settings(family, grid, options, RngSeed{seed, 0});

  json report = {{"tool", std::string(kToolName)},
                 {"version", std::string(kToolVersion)},
                 {"seed", seed},
                 {"config_hash", run_hash(cfg)},
                 {"family", family.name},
                 {"parameters", result.parameters},
                 {"settings", settings_to_json(result.settings)},
                 {"evaluations", result.evaluations},
                 {"restarts", result.restarts},
                 {"grid_atoms", grid.size()},
                 {"value", result.value},
                 {"grid_margin", result.grid_margin},
                 {"refined_grid_atoms", result.refined_grid_atoms},
                 {"refined_value", result.refined_value},
                 {"robust", options.robust},
                 {"stable", result.stable},
                 {"margin", result.margin}};
  emit(cfg, out, report.dump(2) + "\n");
  return kExitSuccess;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", flags.seed, "random seed");
  cmd->add_option("--output", flags.output, "output file (default: stdout)");
  cmd->add_option("--samples", flags.samples, "Monte Carlo sample count");
  cmd->add_option("--grid", flags.grid, "number of candidate atoms");
  cmd->add_option("--k-sigma", flags.k_sigma, "statistical allowance in standard errors");
}

}  // namespace

std::string config_hash(const json& config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016" PRIx64, h);
  return buffer;
}

int run_identity_check(std::ostream& out, const IdentityEvaluator& evaluate) {
  out << "# " << kToolName << ' ' << kToolVersion << " command=identity-check\n";
  int holds = 0;
  for (int a : {1, -1}) {
    for (int b : {1, -1}) {
      const IdentityTerms t = evaluate({a, b});
      const bool ok = t.lhs == t.mid && t.mid == t.rhs;
      holds += ok ? 1 : 0;
      out << "A=" << std::showpos << a << " B=" << b << std::noshowpos << ": -1+|A+B|=" << t.lhs
          << " AB=" << t.mid << " 1-|A-B|=" << t.rhs << (ok ? " ok" : " FAILED") << '\n';
    }
  }
  out << holds << "/4 identities hold\n";
  return holds == 4 ? kExitSuccess : kExitVerdictFailure;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leggett-class hidden-variable models: simulation, bounds and LP certification"};
  app.set_version_flag("--version", std::string(kToolName) + " " + std::string(kToolVersion));
  app.require_subcommand(1);

  CommonFlags flags;
  CLI::App* identity = app.add_subcommand("identity-check", "check -1+|A+B| = AB = 1-|A-B| exhaustively");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimates against averaged bounds (CSV)");
  CLI::App* chsh = app.add_subcommand("chsh", "CHSH values for the singlet and a model");
  CLI::App* bounds = app.add_subcommand("bounds", "exact correlations and averaged bounds (CSV)");
  CLI::App* certify = app.add_subcommand("certify", "LP feasibility certificate for target correlations");
  CLI::App* optimize = app.add_subcommand("optimize", "search settings maximizing the infeasibility margin");
  for (CLI::App* cmd : {simulate, chsh, bounds, certify, optimize}) add_common_flags(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitConfigError;
  }

  try {
    if (identity->parsed()) return run_identity_check(out);
    if (simulate->parsed()) return cmd_simulate(flags, out);
    if (bounds->parsed()) return cmd_bounds(flags, out);
    if (chsh->parsed()) return cmd_chsh(flags, out);
    if (certify->parsed()) return cmd_certify(flags, out, err);
    if (optimize->parsed()) return cmd_optimize(flags, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const LoadError& e) {
    err << "load error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace leggett
