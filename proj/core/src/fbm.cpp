#include "ouarea/fbm.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "ouarea/seeding.hpp"

namespace ouarea {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct FbmSampler::Fft {
  explicit Fft(int n) : size(n) {
    std::lock_guard lock(planner_mutex());
    auto* in = fftw_alloc_complex(static_cast<std::size_t>(n));
    auto* out = fftw_alloc_complex(static_cast<std::size_t>(n));
    plan = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (!plan) throw std::runtime_error("fbm: FFTW planning failed");
  }
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void forward(std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) const {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
  }

  int size;
  fftw_plan plan;
};

double increment_autocovariance(double hurst, long long lag, double step) {
  const double k = std::abs(static_cast<double>(lag));
  const double h2 = 2.0 * hurst;
  const double r = 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(std::abs(k - 1.0), h2));
  return r * std::pow(step, h2);
}

FbmSampler::FbmSampler(double hurst, unsigned level, double horizon, SamplerPolicy policy)
    : hurst_(hurst),
      level_(level),
      horizon_(horizon),
      step_(std::ldexp(horizon, -static_cast<int>(level))),
      generator_(GeneratorTag::circulant_embedding),
      min_eigenvalue_(std::numeric_limits<double>::quiet_NaN()) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("fbm: Hurst parameter must lie in (0, 1)");
  if (!(horizon > 0.0)) throw std::invalid_argument("fbm: horizon must be positive");
  if (level > 24) throw std::invalid_argument("fbm: level too large");

  if (policy == SamplerPolicy::triangular) {
    generator_ = GeneratorTag::triangular_factor;
    return;
  }
  if (policy == SamplerPolicy::automatic && hurst == 0.5) {
    generator_ = GeneratorTag::cumulative_sum;
    return;
  }

  const std::size_t n = std::size_t{1} << level;
  const std::size_t m = 2 * n;
  std::vector<std::complex<double>> row(m), eig(m);
  for (std::size_t k = 0; k <= n; ++k) row[k] = increment_autocovariance(hurst, static_cast<long long>(k), step_);
  for (std::size_t k = n + 1; k < m; ++k) row[k] = row[m - k];

  auto fft = std::make_unique<Fft>(static_cast<int>(m));
  fft->forward(row, eig);

  double min_ev = std::numeric_limits<double>::infinity();
  double max_ev = 0.0;
  for (const auto& e : eig) {
    min_ev = std::min(min_ev, e.real());
    max_ev = std::max(max_ev, e.real());
  }
  min_eigenvalue_ = min_ev;
  if (min_ev < -1e-12 * max_ev) {
    if (policy == SamplerPolicy::circulant)
      throw std::runtime_error("fbm: circulant embedding is not nonnegative definite");
    generator_ = GeneratorTag::triangular_factor;
    return;
  }
  sqrt_eigen_.resize(m);
  for (std::size_t k = 0; k < m; ++k)
    sqrt_eigen_[k] = std::sqrt(std::max(eig[k].real(), 0.0) / static_cast<double>(m));
  fft_ = std::move(fft);
}

FbmSampler::~FbmSampler() = default;
FbmSampler::FbmSampler(FbmSampler&&) noexcept = default;
FbmSampler& FbmSampler::operator=(FbmSampler&&) noexcept = default;

Fbm1dSample FbmSampler::sample(std::uint64_t seed) const {
  switch (generator_) {
    case GeneratorTag::cumulative_sum: return {cumulative_sum(seed), generator_};
    case GeneratorTag::circulant_embedding: return {circulant(seed), generator_};
    case GeneratorTag::triangular_factor: return {triangular(seed), generator_};
    case GeneratorTag::deterministic: break;
  }
  throw std::logic_error("fbm: unexpected generator");
}

std::vector<double> FbmSampler::cumulative_sum(std::uint64_t seed) const {
  const std::size_t n = std::size_t{1} << level_;
  NormalStream normal(seed);
  const double sd = std::sqrt(step_);
  std::vector<double> v(n + 1, 0.0);
  for (std::size_t m = 1; m <= n; ++m) v[m] = v[m - 1] + sd * normal();
  return v;
}

std::vector<double> FbmSampler::circulant(std::uint64_t seed) const {
  const std::size_t n = std::size_t{1} << level_;
  const std::size_t m = 2 * n;
  NormalStream normal(seed);
  std::vector<std::complex<double>> w(m), x(m);
  // Hermitian-symmetric complex normals with E|w_k|^2 = 1, so the transform is real.
  w[0] = sqrt_eigen_[0] * normal();
  w[n] = sqrt_eigen_[n] * normal();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double re = normal() * inv_sqrt2;
    const double im = normal() * inv_sqrt2;
    w[k] = sqrt_eigen_[k] * std::complex<double>(re, im);
    w[m - k] = std::conj(w[k]);
  }
  fft_->forward(w, x);
  std::vector<double> v(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) v[k] = v[k - 1] + x[k - 1].real();
  return v;
}

std::vector<double> FbmSampler::triangular(std::uint64_t seed) const {
  // Hosking's recursion: the Durbin-Levinson coefficients are the rows of the
  // inverse Cholesky factor of the Toeplitz increment covariance.
  const std::size_t n = std::size_t{1} << level_;
  std::vector<double> gamma(n);
  for (std::size_t k = 0; k < n; ++k) gamma[k] = increment_autocovariance(hurst_, static_cast<long long>(k), step_);

  NormalStream normal(seed);
  std::vector<double> x(n), phi(n, 0.0), prev(n, 0.0);
  double var = gamma[0];
  x[0] = std::sqrt(var) * normal();
  for (std::size_t t = 1; t < n; ++t) {
    double num = gamma[t];
    for (std::size_t k = 1; k < t; ++k) num -= prev[k] * gamma[t - k];
    const double ptt = num / var;
    phi[t] = ptt;
    for (std::size_t k = 1; k < t; ++k) phi[k] = prev[k] - ptt * prev[t - k];
    var *= (1.0 - ptt * ptt);
    double mean = 0.0;
    for (std::size_t k = 1; k <= t; ++k) mean += phi[k] * x[t - k];
    x[t] = mean + std::sqrt(std::max(var, 0.0)) * normal();
    std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(t) + 1, prev.begin());
  }
  std::vector<double> v(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) v[k] = v[k - 1] + x[k - 1];
  return v;
}

Fbm1dSample sample_fbm_1d(double hurst, unsigned level, double horizon, std::uint64_t seed,
                          SamplerPolicy policy) {
  return FbmSampler(hurst, level, horizon, policy).sample(seed);
}

PathGrid sample_qfbm(const FbmSampler& sampler, std::size_t modes, std::uint64_t seed) {
  if (modes == 0) throw std::invalid_argument("fbm: at least one mode required");
  const std::size_t points = (std::size_t{1} << sampler.level()) + 1;
  std::vector<double> values;
  values.reserve(points * modes);
  GeneratorTag tag = sampler.generator();
  for (std::size_t j = 0; j < modes; ++j) {
    auto s = sampler.sample(derive_seed(seed, j));
    tag = s.generator;
    values.insert(values.end(), s.values.begin(), s.values.end());
  }
  return PathGrid(std::ldexp(sampler.horizon(), -static_cast<int>(sampler.level())), sampler.level(),
                  points - 1, sampler.hurst(), seed, tag, std::move(values));
}

PathGrid sample_qfbm(const CovarianceSpec& cov, double hurst, unsigned level, double horizon,
                     std::uint64_t seed, SamplerPolicy policy) {
  return sample_qfbm(FbmSampler(hurst, level, horizon, policy), cov.mode_count(), seed);
}

}  // namespace ouarea
