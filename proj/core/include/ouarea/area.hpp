#pragma once

#include <cstddef>
#include <vector>

#include "ouarea/path_grid.hpp"
#include "ouarea/spectrum.hpp"

namespace ouarea {

/// Grid-aligned window [s, t] = [m0 delta, m1 delta] of a path.
struct WindowPair {
  std::size_t m0 = 0;
  std::size_t m1 = 0;

  std::size_t cells() const noexcept { return m1 - m0; }
  bool operator==(const WindowPair&) const = default;
};

/// Window from grid indices; requires m0 <= m1 <= path.cell_count().
WindowPair make_window(const PathGrid& path, std::size_t m0, std::size_t m1);
/// Window from times; both must be grid nodes.
WindowPair make_window(const PathGrid& path, double s, double t);
double window_start(const PathGrid& path, const WindowPair& w);
double window_end(const PathGrid& path, const WindowPair& w);

/// Windows of width horizon / 2^k for k = 1..scales, tiling [0, horizon].
/// Expressed in cells of a grid at `level`; requires scales <= level.
std::vector<WindowPair> dyadic_windows(unsigned level, unsigned scales);

// All area routines below act on the piecewise-linear interpolant of the
// path and return exact values up to rounding. `lambda` is the eigenvalue of
// the selected mode; j and k are noise mode indices.

/// int_s^t int_s^xi e^{-lambda (xi - r)} d omega_j(r) d omega_k(xi), O(M).
double area_component(const PathGrid& path, double lambda, std::size_t j, std::size_t k,
                      const WindowPair& w);
double area_component(const PathGrid& path, const SpectrumConfig& cfg, std::size_t i,
                      std::size_t j, std::size_t k, const WindowPair& w);

/// area_component(m0, m) for every m = m0..end in one pass; out[0] = 0.
std::vector<double> area_sweep(const PathGrid& path, double lambda, std::size_t j,
                               std::size_t k, std::size_t m0, std::size_t end);

/// int_s^t (omega_j(xi) - omega_j(s)) d omega_k(xi).
double plain_area_component(const PathGrid& path, std::size_t j, std::size_t k,
                            const WindowPair& w);

/// lambda int_s^t int_s^xi e^{-lambda (xi - r)} (omega_j(r) - omega_j(s)) dr d omega_k(xi),
/// by its own closed form. area = plain - drift.
double drift_component(const PathGrid& path, double lambda, std::size_t j, std::size_t k,
                       const WindowPair& w);

/// int_s^tau e^{-lambda (tau - r)} d omega_j(r) over the window [s, tau].
double conv_integral_left(const PathGrid& path, double lambda, std::size_t j,
                          const WindowPair& w);
/// int_tau^t e^{-lambda (xi - tau)} d omega_k(xi) over the window [tau, t].
double conv_integral_right(const PathGrid& path, double lambda, std::size_t k,
                           const WindowPair& w);

/// area(s,t) - area(tau,t) - area(s,tau) - left(s,tau) right(tau,t), with grid
/// indices m0 <= mt <= m1. Zero up to rounding for piecewise-linear paths.
double chen_residual(const PathGrid& path, double lambda, std::size_t j, std::size_t k,
                     std::size_t m0, std::size_t mt, std::size_t m1);

/// Amount subtracted from the Stratonovich (piecewise-linear limit) value to
/// obtain the Ito value: (t - s)/2 on the diagonal j == k, 0 otherwise. Unscaled.
double ito_stratonovich_correction(std::size_t j, std::size_t k, double s, double t);

/// G(xi) = lambda int_s^xi e^{-lambda (xi - r)} (omega_j(r) - omega_j(s)) dr on
/// [s, t], the negative of the generator term inside the correction integral.
/// Node values are precomputed; evaluation between nodes is closed form.
class InnerDriftProfile {
 public:
  InnerDriftProfile(const PathGrid& path, double lambda, std::size_t j, const WindowPair& w);

  double operator()(double xi) const;
  /// Value at window node s + m delta.
  double node(std::size_t m) const { return g_.at(m); }
  double start() const noexcept { return s_; }
  double end() const noexcept { return s_ + step_ * static_cast<double>(g_.size() - 1); }
  double lambda() const noexcept { return lambda_; }

 private:
  double s_;
  double step_;
  double lambda_;
  std::vector<double> g_;  // G at nodes
  std::vector<double> x_;  // omega_j - omega_j(s) at nodes
};

}  // namespace ouarea
