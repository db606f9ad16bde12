#pragma once

#include <cstddef>
#include <span>

namespace ouarea {

struct HolderEstimate {
  double value = 0.0;
  /// false when the pair scan was subsampled; value is then a lower bound of
  /// the exhaustive discrete seminorm.
  bool exhaustive = true;
  std::size_t pairs = 0;
};

/// Points up to which every grid pair is scanned (2^12 cells).
inline constexpr std::size_t default_holder_cap = 4097;

/// sup over grid pairs s < t of |f(t) - f(s)| / (t - s)^beta for values on an
/// equidistant grid with the given step. Above `subsample_cap` points, scans all
/// pairs of an evenly strided subset plus all adjacent pairs at full resolution.
HolderEstimate holder_seminorm(std::span<const double> values, double step, double beta,
                               std::size_t subsample_cap = default_holder_cap);

}  // namespace ouarea
