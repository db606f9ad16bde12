#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ouarea/covariance.hpp"
#include "ouarea/report.hpp"
#include "ouarea/spectrum.hpp"

namespace ouarea {

/// Monte Carlo moments of Brownian (H = 1/2) areas.
struct MomentConfig {
  double horizon = 1.0;
  unsigned level = 8;
  unsigned reference_level = 10;
  /// Levels compared with the reference for the difference moment.
  std::vector<unsigned> difference_levels = {5, 6, 7, 8};
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 1;
  int p = 1;
  /// Window widths [0, w] for the norm-moment scaling, as fractions of T.
  std::vector<double> width_fractions = {0.125, 0.25, 0.5};
  std::size_t samples = 20000;
  std::uint64_t seed = 1234;
  SpectrumConfig spectrum = SpectrumConfig::dirichlet_laplacian();
  CovarianceSpec covariance = CovarianceSpec::power_law(4, 2.0);
  std::size_t bootstrap_replicates = 200;
  unsigned threads = 1;
};

/// Checks: diagonal_mean_z and offdiagonal_mean_z within 3 standard errors of
/// (t - s) phi(lambda_i delta) and 0; norm_moment_exponent within 2p +- 0.3;
/// difference_moment_slope with confidence interval above 0.
StudyReport moment_suite(const MomentConfig& cfg);

}  // namespace ouarea
