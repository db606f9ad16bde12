#include "config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ouarea::cli {

namespace {

json common_defaults() {
  return {{"schema_version", schema_version},
          {"seed", 1234},
          {"hurst", 0.5},
          {"levels", json::array({7})},
          {"modes", json::array({16, 4})},
          {"kappa", 0.3},
          {"beta", nullptr},
          {"horizon", 1.0},
          {"threads", 1},
          {"policy", "automatic"},
          {"spectrum", {{"law", "dirichlet"}}},
          {"covariance", {{"law", "power_law"}, {"rho", 2.0}}},
          {"out", nullptr}};
}

std::vector<unsigned> range(unsigned a, unsigned b) {
  std::vector<unsigned> v;
  for (unsigned l = a; l <= b; ++l) v.push_back(l);
  return v;
}

json section_defaults(const std::string& command) {
  if (command == "sample") return json::object();
  if (command == "area") return {{"s", 0.0}, {"t", nullptr}};
  if (command == "chen") return {{"cases", 200}, {"tolerance", 1e-10}};
  if (command == "convergence")
    return {{"reference_level", 12}, {"seeds", 20}, {"window_scales", 4},
            {"bootstrap_replicates", 400}, {"slope_bounds", nullptr}};
  if (command == "moments")
    return {{"reference_level", 10},       {"difference_levels", json::array({5, 6, 7, 8})},
            {"i", 0},                      {"j", 0},
            {"k", 1},                      {"p", 1},
            {"width_fractions", json::array({0.125, 0.25, 0.5})},
            {"samples", 20000},            {"bootstrap_replicates", 200}};
  if (command == "stationarity")
    return {{"shifts", 100}, {"ensemble", 10000}, {"i", 0}, {"j", 0}, {"k", 1},
            {"window_cells", 0}, {"ensemble_shift", 0}, {"tolerance", 1e-12}};
  if (command == "bdg") return {{"p", 1}, {"samples", 20000}, {"zero_integrand", false}};
  if (command == "multinomial") return {{"p_max", 4}, {"m_max", 8}};
  if (command == "frak-oracle")
    return {{"s", 0.0},          {"t", nullptr},         {"alpha", nullptr},    {"level", 16},
            {"points", 12},      {"ratio", 0.25},        {"max_level", 32},     {"tolerance", 1e-3},
            {"stiff_tolerance", 1e-2}, {"stiff_threshold", 10.0}};
  if (command == "level1")
    return {{"reference_level", 12}, {"seeds", 20}, {"betas", nullptr}, {"bootstrap_replicates", 400}};
  throw ConfigError("unknown subcommand '" + command + "'");
}

json default_levels(const std::string& command) {
  if (command == "convergence") return range(4, 9);
  if (command == "level1") return range(4, 10);
  if (command == "moments" || command == "stationarity") return {8};
  if (command == "frak-oracle") return {6};
  if (command == "bdg") return {10};
  return {7};
}

// A value may replace a default when the JSON kinds agree; integers must be
// nonnegative where the default is. Null defaults accept anything and are
// checked where they are used.
bool compatible(const json& def, const json& v) {
  if (def.is_null()) return true;
  if (def.is_number_unsigned()) return v.is_number_unsigned();
  if (def.is_number()) return v.is_number();
  if (def.is_boolean()) return v.is_boolean();
  if (def.is_string()) return v.is_string();
  if (def.is_array()) {
    if (!v.is_array()) return false;
    if (def.empty()) return true;
    for (const auto& e : v)
      if (!compatible(def.front(), e)) return false;
    return true;
  }
  if (def.is_object()) return v.is_object();
  return false;
}

void merge_section(json& target, const json& given, const std::string& where) {
  if (!given.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : given.items()) {
    if (!target.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (!compatible(target[key], value)) throw ConfigError(where + ": key '" + key + "' has the wrong type");
    target[key] = value;
  }
}

void check_nested(const json& obj, const std::vector<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(where + ": unknown key '" + key + "'");
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

const std::vector<std::string>& study_commands() {
  static const std::vector<std::string> c = {"sample",       "area", "chen",        "convergence",
                                             "moments",      "stationarity", "bdg", "multinomial",
                                             "frak-oracle",  "level1"};
  return c;
}

std::vector<unsigned> parse_levels(const std::string& text) {
  const auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("levels: expected nonnegative integers, got '" + text + "'");
    return static_cast<unsigned>(std::stoul(s));
  };
  std::vector<unsigned> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const unsigned a = number(text.substr(0, dots)), b = number(text.substr(dots + 2));
    if (a > b) throw ConfigError("levels: empty range '" + text + "'");
    return range(a, b);
  }
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) out.push_back(number(part));
  if (out.empty()) throw ConfigError("levels: empty list");
  return out;
}

std::pair<std::size_t, std::size_t> parse_modes(const std::string& text) {
  const auto comma = text.find(',');
  const auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("modes: expected I,J, got '" + text + "'");
    return static_cast<std::size_t>(std::stoul(s));
  };
  if (comma == std::string::npos) throw ConfigError("modes: expected I,J, got '" + text + "'");
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

json load_config_file(const std::string& path, std::string* command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("manifest_version")) {
    if (command) *command = j.value("command", "");
    if (!j.contains("config")) throw ConfigError("manifest '" + path + "' has no config");
    return j.at("config");
  }
  return j;
}

json resolve_config(const std::string& command, const json& file, const Overrides& ov) {
  json out = common_defaults();
  out["levels"] = default_levels(command);
  json section = section_defaults(command);
  if (!file.is_null()) {
    if (!file.is_object()) throw ConfigError("config: expected a JSON object");
    if (!file.contains("schema_version")) throw ConfigError("config: schema_version is required");
    if (file.at("schema_version") != schema_version)
      throw ConfigError("config: unsupported schema_version " + file.at("schema_version").dump());
    const auto& cmds = study_commands();
    for (const auto& [key, value] : file.items()) {
      if (std::find(cmds.begin(), cmds.end(), key) != cmds.end()) {
        json scratch = section_defaults(key);
        merge_section(scratch, value, "config section '" + key + "'");
        if (key == command) section = scratch;
        continue;
      }
      if (!out.contains(key)) throw ConfigError("config: unknown key '" + key + "'");
      if (!compatible(out[key], value)) throw ConfigError("config: key '" + key + "' has the wrong type");
      out[key] = value;
    }
  }
  if (ov.seed) out["seed"] = *ov.seed;
  if (ov.hurst) out["hurst"] = *ov.hurst;
  if (ov.levels) out["levels"] = *ov.levels;
  if (ov.modes) out["modes"] = {ov.modes->first, ov.modes->second};
  if (ov.kappa) out["kappa"] = *ov.kappa;
  if (ov.beta) out["beta"] = *ov.beta;
  if (ov.out) out["out"] = *ov.out;
  if (ov.threads) out["threads"] = *ov.threads;
  out[command] = section;

  if (out["levels"].empty()) throw ConfigError("config: levels must not be empty");
  if (out["modes"].size() != 2) throw ConfigError("config: modes must be [I, J]");
  const double h = get<double>(out, "hurst");
  if (!(h > 0.0 && h < 1.0)) throw ConfigError("config: hurst must lie in (0, 1)");
  if (get<unsigned>(out, "threads") < 1) throw ConfigError("config: threads must be at least 1");
  if (!out["out"].is_null() && !out["out"].is_string()) throw ConfigError("config: out must be a string");
  check_nested(out["spectrum"], {"law", "scale", "dim", "eigenvalues"}, "config spectrum");
  check_nested(out["covariance"], {"law", "rho", "weights"}, "config covariance");
  // resolve derived values so the manifest records what actually ran
  out["beta"] = beta_from(out);
  spectrum_from(out);
  covariance_from(out);
  policy_from(out);
  return out;
}

std::string output_directory(const json& resolved) {
  if (resolved.contains("out") && resolved["out"].is_string()) return resolved["out"].get<std::string>();
  if (const char* env = std::getenv("OUAREA_OUT_DIR"); env && *env) return env;
  return "ouarea-out";
}

SpectrumConfig spectrum_from(const json& resolved) {
  const json& s = resolved.at("spectrum");
  const auto modes = get<std::vector<std::size_t>>(resolved, "modes");
  const double kappa = get<double>(resolved, "kappa");
  const std::string law = s.value("law", "dirichlet");
  try {
    if (law == "dirichlet") {
      check_nested(s, {"law"}, "config spectrum");
      return SpectrumConfig::dirichlet_laplacian(modes[0], kappa);
    }
    if (law == "power_law")
      return SpectrumConfig::power_law(modes[0], get<double>(s, "scale"), s.contains("dim") ? get<double>(s, "dim") : 1.0, kappa);
    if (law == "explicit") {
      const auto ev = get<std::vector<double>>(s, "eigenvalues");
      if (ev.size() != modes[0]) throw ConfigError("config spectrum: eigenvalue count differs from modes[0]");
      return SpectrumConfig::explicit_list(ev, kappa);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config spectrum: ") + e.what());
  }
  throw ConfigError("config spectrum: unknown law '" + law + "'");
}

CovarianceSpec covariance_from(const json& resolved) {
  const json& c = resolved.at("covariance");
  const auto modes = get<std::vector<std::size_t>>(resolved, "modes");
  const std::string law = c.value("law", "power_law");
  try {
    if (law == "power_law") return CovarianceSpec::power_law(modes[1], get<double>(c, "rho"));
    if (law == "explicit") {
      const auto w = get<std::vector<double>>(c, "weights");
      if (w.size() != modes[1]) throw ConfigError("config covariance: weight count differs from modes[1]");
      return CovarianceSpec::explicit_weights(w);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config covariance: ") + e.what());
  }
  throw ConfigError("config covariance: unknown law '" + law + "'");
}

SamplerPolicy policy_from(const json& resolved) {
  const auto p = get<std::string>(resolved, "policy");
  if (p == "automatic") return SamplerPolicy::automatic;
  if (p == "circulant") return SamplerPolicy::circulant;
  if (p == "triangular") return SamplerPolicy::triangular;
  throw ConfigError("config: unknown policy '" + p + "'");
}

double beta_from(const json& resolved) {
  const double h = get<double>(resolved, "hurst");
  const double b = resolved.at("beta").is_null() ? h - 0.05 : get<double>(resolved, "beta");
  if (!(b > 0.0 && b < h)) throw ConfigError("config: beta must lie in (0, hurst)");
  return b;
}

unsigned level_from(const json& resolved) {
  const auto levels = get<std::vector<unsigned>>(resolved, "levels");
  return *std::max_element(levels.begin(), levels.end());
}

}  // namespace ouarea::cli
