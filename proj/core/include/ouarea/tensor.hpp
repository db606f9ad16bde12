#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ouarea/area.hpp"
#include "ouarea/covariance.hpp"
#include "ouarea/path_grid.hpp"
#include "ouarea/spectrum.hpp"

namespace ouarea {

/// Dense I x J x J table of unscaled area components for one window, with the
/// weights q_j^(1/2) q_k^(1/2) lambda_i^(-kappa) that turn them into the
/// coordinates of the Hilbert-Schmidt operator.
class AreaTensor {
 public:
  AreaTensor(WindowPair window, double s, double t, unsigned level, double kappa,
             std::vector<double> lambdas, std::vector<double> amplitudes,
             std::vector<double> unscaled);

  std::size_t spectral_modes() const noexcept { return lambdas_.size(); }
  std::size_t noise_modes() const noexcept { return amplitudes_.size(); }
  const WindowPair& window() const noexcept { return window_; }
  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }
  unsigned level() const noexcept { return level_; }
  double kappa() const noexcept { return kappa_; }

  double unscaled(std::size_t i, std::size_t j, std::size_t k) const;
  double weight(std::size_t i, std::size_t j, std::size_t k) const;
  double scaled(std::size_t i, std::size_t j, std::size_t k) const;
  const std::vector<double>& unscaled_values() const noexcept { return values_; }

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const;

  WindowPair window_;
  double s_;
  double t_;
  unsigned level_;
  double kappa_;
  std::vector<double> lambdas_;
  std::vector<double> amplitudes_;
  std::vector<double> mode_weights_;  // lambda_i^(-kappa)
  std::vector<double> values_;
};

/// All I J^2 components on one window. The path must carry at least J modes.
AreaTensor scaled_tensor(const PathGrid& path, const SpectrumConfig& cfg,
                         const CovarianceSpec& cov, const WindowPair& w, unsigned threads = 1);

/// Tensors for many windows, sharing one sweep per (component, window start).
std::vector<AreaTensor> scaled_tensors(const PathGrid& path, const SpectrumConfig& cfg,
                                       const CovarianceSpec& cov,
                                       const std::vector<WindowPair>& windows,
                                       unsigned threads = 1);

/// sqrt(sum_{ijk} q_j q_k lambda_i^(-2 kappa) a_ijk^2).
double hs_norm(const AreaTensor& tensor);

/// Hilbert-Schmidt norm of the difference of two tensors with equal weights.
double hs_distance(const AreaTensor& a, const AreaTensor& b);

/// Rows `i,j,k,s,t,unscaled,scaled`; header only when requested.
void write_tensor_csv(const AreaTensor& tensor, std::ostream& os, bool header = true);

}  // namespace ouarea
