#pragma once

#include <cstddef>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ouarea/covariance.hpp"
#include "ouarea/fbm.hpp"
#include "ouarea/spectrum.hpp"

namespace ouarea::cli {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int schema_version = 1;

/// Subcommands that take a config; `report` does not.
const std::vector<std::string>& study_commands();

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> hurst;
  std::optional<std::vector<unsigned>> levels;
  std::optional<std::pair<std::size_t, std::size_t>> modes;
  std::optional<double> kappa;
  std::optional<double> beta;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
};

/// "4..9", "4,5,7" or "8".
std::vector<unsigned> parse_levels(const std::string& text);
/// "I,J".
std::pair<std::size_t, std::size_t> parse_modes(const std::string& text);

/// Reads a config file. A run manifest is accepted too: its embedded config is
/// returned and `command` receives the subcommand it was produced by.
json load_config_file(const std::string& path, std::string* command = nullptr);

/// Validates `file` (unknown keys and mistyped values are errors), applies
/// defaults and overrides and returns the resolved config: the common keys
/// plus the section of `command`.
json resolve_config(const std::string& command, const json& file, const Overrides& ov);

/// Output directory: the resolved `out`, else $OUAREA_OUT_DIR, else ./ouarea-out.
std::string output_directory(const json& resolved);

SpectrumConfig spectrum_from(const json& resolved);
CovarianceSpec covariance_from(const json& resolved);
SamplerPolicy policy_from(const json& resolved);
double beta_from(const json& resolved);
/// Finest configured level (single-level subcommands).
unsigned level_from(const json& resolved);

}  // namespace ouarea::cli
