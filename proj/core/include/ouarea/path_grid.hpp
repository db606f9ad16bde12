#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ouarea {

/// How a path sample was produced; recorded in run manifests.
enum class GeneratorTag {
  circulant_embedding,
  triangular_factor,
  cumulative_sum,
  deterministic,  // built from caller-supplied values
};

std::string to_string(GeneratorTag tag);

/// Samples of the J unscaled driving components omega_j on an equidistant
/// grid t_m = m * step, m = 0..cells. The covariance weights q_j are *not*
/// applied here; they enter when the area tensor is assembled.
///
/// A freshly sampled grid has cells == 2^level. Shifting keeps the step and
/// level but drops leading cells, so cells may be smaller afterwards.
///
/// Node storage is shared and never rewritten: a shifted grid is a view with
/// an offset, and value(j, m) = raw(j)[m] - raw(j)[0]. Increments and
/// differences of raw nodes are therefore bit-identical between a shifted
/// grid and the corresponding window of the original.
class PathGrid {
 public:
  PathGrid(double step, unsigned level, std::size_t cells, double hurst, std::uint64_t seed,
           GeneratorTag generator, std::vector<double> values);

  /// A deterministic path on [0, horizon]; every row must have 2^n + 1 entries
  /// starting at zero.
  static PathGrid from_rows(double horizon, const std::vector<std::vector<double>>& rows,
                            double hurst = 0.5);

  double step() const noexcept { return step_; }
  unsigned level() const noexcept { return level_; }
  std::size_t cell_count() const noexcept { return cells_; }
  std::size_t point_count() const noexcept { return cells_ + 1; }
  std::size_t mode_count() const noexcept { return modes_; }
  double horizon() const noexcept { return step_ * static_cast<double>(cells_); }
  double hurst() const noexcept { return hurst_; }
  std::uint64_t seed() const noexcept { return seed_; }
  GeneratorTag generator() const noexcept { return generator_; }
  /// Cells dropped by shifting, relative to the stored nodes.
  std::size_t offset() const noexcept { return offset_; }

  /// Node values of mode j up to the additive constant raw(j)[0].
  std::span<const double> raw(std::size_t j) const;
  /// omega_j(t_m); exactly 0 at m = 0.
  double value(std::size_t j, std::size_t m) const;
  std::vector<double> mode_values(std::size_t j) const;
  double time(std::size_t m) const noexcept { return step_ * static_cast<double>(m); }

  /// Same metadata and the same node values (not the same storage).
  bool operator==(const PathGrid& other) const;

 private:
  PathGrid(const PathGrid& base, double step, unsigned level, std::size_t cells,
           std::size_t offset, std::shared_ptr<const std::vector<double>> raw,
           std::size_t raw_points);

  friend PathGrid coarsen(const PathGrid&, unsigned);
  friend PathGrid shift_cells(const PathGrid&, std::size_t);

  double step_;
  unsigned level_;
  std::size_t cells_;
  std::size_t modes_;
  double hurst_;
  std::uint64_t seed_;
  GeneratorTag generator_;
  std::size_t offset_ = 0;
  std::size_t raw_points_;  // stored nodes per mode
  std::shared_ptr<const std::vector<double>> raw_;
};

/// Grid index of time t, which must be a node of the grid (relative slack 1e-9).
std::size_t grid_index(const PathGrid& path, double t);

/// The piecewise-linear interpolant at a coarser dyadic level: keeps every
/// 2^(level - target)-th node.
PathGrid coarsen(const PathGrid& path, unsigned target_level);

/// Linear interpolation of mode j at t in [0, horizon].
double eval_linear(const PathGrid& path, std::size_t j, double t);

/// Wiener shift theta_tau: t -> omega(t + tau) - omega(tau) on [0, horizon - tau].
/// tau must be grid aligned.
PathGrid shift(const PathGrid& path, double tau);
PathGrid shift_cells(const PathGrid& path, std::size_t offset);

/// omega_j(t_m) - omega_j(t_{m-1}) for 1 <= m <= cells.
double increment(const PathGrid& path, std::size_t j, std::size_t m);

/// CSV dump: header `t,mode_0,...,mode_{J-1}`, one row per node.
void write_path_csv(const PathGrid& path, std::ostream& os);

}  // namespace ouarea
