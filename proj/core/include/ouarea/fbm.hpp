#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ouarea/covariance.hpp"
#include "ouarea/path_grid.hpp"

namespace ouarea {

enum class SamplerPolicy {
  automatic,   // cumulative sums at H = 1/2, circulant embedding otherwise, triangular fallback
  circulant,   // circulant embedding or throw
  triangular,  // Durbin-Levinson factorisation of the Toeplitz covariance (O(N^2) per sample)
};

/// Autocovariance of fractional Gaussian noise with step delta:
/// (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) delta^{2H} / 2.
double increment_autocovariance(double hurst, long long lag, double step);

struct Fbm1dSample {
  std::vector<double> values;  // 2^level + 1 nodes starting at 0
  GeneratorTag generator;
};

/// Exact Gaussian sampler of one standard fBm component on the dyadic grid of
/// [0, horizon] at a fixed level. Spectral data is computed once; sample()
/// is const and safe to call concurrently.
class FbmSampler {
 public:
  FbmSampler(double hurst, unsigned level, double horizon,
             SamplerPolicy policy = SamplerPolicy::automatic);
  ~FbmSampler();
  FbmSampler(FbmSampler&&) noexcept;
  FbmSampler& operator=(FbmSampler&&) noexcept;

  Fbm1dSample sample(std::uint64_t seed) const;

  double hurst() const noexcept { return hurst_; }
  unsigned level() const noexcept { return level_; }
  double horizon() const noexcept { return horizon_; }
  GeneratorTag generator() const noexcept { return generator_; }
  /// Smallest circulant eigenvalue (before clipping); NaN when not circulant.
  double min_circulant_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  struct Fft;
  std::vector<double> cumulative_sum(std::uint64_t seed) const;
  std::vector<double> circulant(std::uint64_t seed) const;
  std::vector<double> triangular(std::uint64_t seed) const;

  double hurst_;
  unsigned level_;
  double horizon_;
  double step_;
  GeneratorTag generator_;
  double min_eigenvalue_;
  std::vector<double> sqrt_eigen_;  // sqrt(lambda_k / 2N)
  std::unique_ptr<Fft> fft_;
};

/// One fBm component; H in (0, 1). Deterministic in (seed, H, level, horizon).
Fbm1dSample sample_fbm_1d(double hurst, unsigned level, double horizon, std::uint64_t seed,
                          SamplerPolicy policy = SamplerPolicy::automatic);

/// J independent standard components (J = cov.mode_count()); mode j is drawn
/// from substream derive_seed(seed, j). The components are stored unscaled.
PathGrid sample_qfbm(const CovarianceSpec& cov, double hurst, unsigned level, double horizon,
                     std::uint64_t seed, SamplerPolicy policy = SamplerPolicy::automatic);

/// Same as sample_qfbm with a prepared sampler and an explicit mode count.
PathGrid sample_qfbm(const FbmSampler& sampler, std::size_t modes, std::uint64_t seed);

}  // namespace ouarea
