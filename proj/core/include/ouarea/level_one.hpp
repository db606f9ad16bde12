#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ouarea/fbm.hpp"
#include "ouarea/holder.hpp"
#include "ouarea/report.hpp"

namespace ouarea {

struct LevelOneConfig {
  double hurst = 0.5;
  /// The first entry is asserted; the others are reported as a trend.
  std::vector<double> betas = {0.45};
  std::vector<unsigned> levels = {4, 5, 6, 7, 8, 9, 10};
  unsigned reference_level = 12;
  double horizon = 1.0;
  std::uint64_t seed = 1234;
  std::size_t seeds = 20;
  SamplerPolicy policy = SamplerPolicy::automatic;
  std::size_t holder_cap = default_holder_cap;
  std::size_t bootstrap_replicates = 400;
  unsigned threads = 1;
};

struct LevelOneErrors {
  unsigned level = 0;
  double sup_error = 0.0;
  std::vector<double> holder_error;  // one per beta
};

/// ||omega - omega^n||_beta and sup |omega - omega^n| on the fine grid of
/// `values` (2^fine_level + 1 nodes on [0, horizon]).
std::vector<LevelOneErrors> level1_errors(std::span<const double> values, unsigned fine_level,
                                          double horizon, std::span<const unsigned> levels,
                                          std::span<const double> betas,
                                          std::size_t holder_cap = default_holder_cap);

/// Decay of the level-1 error in delta. Checks: holder_slope_ci_lower > 0 for
/// betas[0]; sup_slope within H +- 0.15.
StudyReport level1_rate_study(const LevelOneConfig& cfg);

}  // namespace ouarea
