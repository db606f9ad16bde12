#pragma once

#include <cstddef>
#include <cstdint>

#include "ouarea/covariance.hpp"
#include "ouarea/fbm.hpp"
#include "ouarea/report.hpp"
#include "ouarea/spectrum.hpp"

namespace ouarea {

struct StationarityConfig {
  double hurst = 0.5;
  unsigned level = 8;
  double horizon = 1.0;
  SpectrumConfig spectrum = SpectrumConfig::dirichlet_laplacian();
  CovarianceSpec covariance = CovarianceSpec::power_law(4, 2.0);
  std::uint64_t seed = 1234;
  /// Random grid-aligned shifts for the pathwise identity.
  std::size_t shifts = 100;
  /// Seeds per ensemble for the distributional comparison; 0 skips it.
  std::size_t ensemble = 10000;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 1;
  /// Compared window [0, width] against [tau, tau + width], in cells; 0 means a quarter.
  std::size_t window_cells = 0;
  /// Ensemble shift in cells; 0 means half the grid.
  std::size_t ensemble_shift = 0;
  double tolerance = 1e-12;
  SamplerPolicy policy = SamplerPolicy::automatic;
  unsigned threads = 1;
};

/// Pathwise: area on theta_tau omega equals area of omega on the shifted
/// window, all components and all fitting dyadic windows (4 scales).
/// Distributional: two independent ensembles, unshifted and shifted window;
/// mean and second central moment z-scores and the two-sample KS statistic.
StudyReport stationarity_check(const StationarityConfig& cfg);

}  // namespace ouarea
