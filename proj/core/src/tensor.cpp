#include "ouarea/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "ouarea/csv.hpp"
#include "ouarea/parallel.hpp"

namespace ouarea {

AreaTensor::AreaTensor(WindowPair window, double s, double t, unsigned level, double kappa,
                       std::vector<double> lambdas, std::vector<double> amplitudes,
                       std::vector<double> unscaled)
    : window_(window),
      s_(s),
      t_(t),
      level_(level),
      kappa_(kappa),
      lambdas_(std::move(lambdas)),
      amplitudes_(std::move(amplitudes)),
      values_(std::move(unscaled)) {
  const std::size_t n = lambdas_.size() * amplitudes_.size() * amplitudes_.size();
  if (n == 0 || values_.size() != n)
    throw std::invalid_argument("AreaTensor: component count does not match I J^2");
  mode_weights_.reserve(lambdas_.size());
  for (double l : lambdas_) mode_weights_.push_back(kappa_ == 0.0 ? 1.0 : std::pow(l, -kappa_));
}

std::size_t AreaTensor::index(std::size_t i, std::size_t j, std::size_t k) const {
  const std::size_t nj = amplitudes_.size();
  if (i >= lambdas_.size() || j >= nj || k >= nj)
    throw std::out_of_range("AreaTensor: component index out of range");
  return (i * nj + j) * nj + k;
}

double AreaTensor::unscaled(std::size_t i, std::size_t j, std::size_t k) const {
  return values_[index(i, j, k)];
}

double AreaTensor::weight(std::size_t i, std::size_t j, std::size_t k) const {
  index(i, j, k);
  return amplitudes_[j] * amplitudes_[k] * mode_weights_[i];
}

double AreaTensor::scaled(std::size_t i, std::size_t j, std::size_t k) const {
  return weight(i, j, k) * unscaled(i, j, k);
}

namespace {

std::vector<double> amplitudes_of(const CovarianceSpec& cov) {
  std::vector<double> a(cov.mode_count());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = cov.amplitude(j);
  return a;
}

}  // namespace

std::vector<AreaTensor> scaled_tensors(const PathGrid& path, const SpectrumConfig& cfg,
                                       const CovarianceSpec& cov,
                                       const std::vector<WindowPair>& windows,
                                       unsigned threads) {
  const std::size_t ni = cfg.mode_count();
  const std::size_t nj = cov.mode_count();
  if (path.mode_count() < nj)
    throw std::invalid_argument("scaled_tensor: path has fewer modes than the covariance");
  for (const auto& w : windows)
    if (w.m0 > w.m1 || w.m1 > path.cell_count())
      throw std::out_of_range("scaled_tensor: window does not fit the path grid");

  // Furthest end per distinct start.
  std::map<std::size_t, std::size_t> reach;
  for (const auto& w : windows) reach[w.m0] = std::max(reach[w.m0], w.m1);

  const std::size_t comps = ni * nj * nj;
  std::vector<std::vector<double>> values(windows.size(), std::vector<double>(comps));
  parallel_for(comps, threads, [&](std::size_t c) {
    const std::size_t i = c / (nj * nj);
    const std::size_t j = (c / nj) % nj;
    const std::size_t k = c % nj;
    const double lambda = cfg.eigenvalue(i);
    for (const auto& [m0, end] : reach) {
      const auto sweep = area_sweep(path, lambda, j, k, m0, end);
      for (std::size_t w = 0; w < windows.size(); ++w)
        if (windows[w].m0 == m0) values[w][c] = sweep[windows[w].m1 - m0];
    }
  });

  std::vector<double> lambdas(cfg.eigenvalues().begin(), cfg.eigenvalues().end());
  const auto amps = amplitudes_of(cov);
  std::vector<AreaTensor> out;
  out.reserve(windows.size());
  for (std::size_t w = 0; w < windows.size(); ++w)
    out.emplace_back(windows[w], window_start(path, windows[w]), window_end(path, windows[w]),
                     path.level(), cfg.kappa(), lambdas, amps, std::move(values[w]));
  return out;
}

AreaTensor scaled_tensor(const PathGrid& path, const SpectrumConfig& cfg,
                         const CovarianceSpec& cov, const WindowPair& w, unsigned threads) {
  return std::move(scaled_tensors(path, cfg, cov, {w}, threads).front());
}

double hs_norm(const AreaTensor& tensor) {
  double sum = 0.0;
  for (std::size_t i = 0; i < tensor.spectral_modes(); ++i)
    for (std::size_t j = 0; j < tensor.noise_modes(); ++j)
      for (std::size_t k = 0; k < tensor.noise_modes(); ++k) {
        const double v = tensor.scaled(i, j, k);
        sum += v * v;
      }
  return std::sqrt(sum);
}

double hs_distance(const AreaTensor& a, const AreaTensor& b) {
  if (a.spectral_modes() != b.spectral_modes() || a.noise_modes() != b.noise_modes())
    throw std::invalid_argument("hs_distance: tensor shapes differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.spectral_modes(); ++i)
    for (std::size_t j = 0; j < a.noise_modes(); ++j)
      for (std::size_t k = 0; k < a.noise_modes(); ++k) {
        const double v = a.weight(i, j, k) * (a.unscaled(i, j, k) - b.unscaled(i, j, k));
        sum += v * v;
      }
  return std::sqrt(sum);
}

void write_tensor_csv(const AreaTensor& tensor, std::ostream& os, bool header) {
  if (header) os << "i,j,k,s,t,unscaled,scaled\n";
  csv::RowWriter row(os);
  for (std::size_t i = 0; i < tensor.spectral_modes(); ++i)
    for (std::size_t j = 0; j < tensor.noise_modes(); ++j)
      for (std::size_t k = 0; k < tensor.noise_modes(); ++k) {
        row << i << j << k << tensor.s() << tensor.t() << tensor.unscaled(i, j, k)
            << tensor.scaled(i, j, k);
        row.end();
      }
}

}  // namespace ouarea
