#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ouarea/covariance.hpp"
#include "ouarea/fbm.hpp"
#include "ouarea/report.hpp"
#include "ouarea/spectrum.hpp"

namespace ouarea {

struct ConvergenceConfig {
  double hurst = 0.5;
  double beta = 0.45;
  std::vector<unsigned> levels = {4, 5, 6, 7, 8, 9};
  unsigned reference_level = 12;
  double horizon = 1.0;
  SpectrumConfig spectrum = SpectrumConfig::dirichlet_laplacian();
  CovarianceSpec covariance = CovarianceSpec::power_law(4, 2.0);
  std::uint64_t seed = 1234;
  std::size_t seeds = 20;
  /// Dyadic windows of widths T/2 .. T/2^scales.
  unsigned window_scales = 4;
  SamplerPolicy policy = SamplerPolicy::automatic;
  std::size_t bootstrap_replicates = 400;
  unsigned threads = 1;
  /// Asserted range of the RMS slope; defaults to [0.35, 0.65] when H = 1/2.
  std::optional<std::pair<double, double>> slope_bounds;
};

/// Wong-Zakai study: per seed one path at the reference level, coarsened to
/// each level; Hilbert-Schmidt errors of the scaled tensors on the window
/// family, and their 2 beta-Hoelder field norm. Metrics per level:
/// rms_hs, field_norm (mean over seeds), max_window_ratio.
StudyReport convergence_study(const ConvergenceConfig& cfg);

}  // namespace ouarea
