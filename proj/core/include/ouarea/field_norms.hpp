#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace ouarea {

struct FieldSample {
  double s = 0.0;
  double t = 0.0;
  double value = 0.0;
};

/// max over the supplied pairs of |value| / (t - s)^exponent with
/// exponent = 2 beta. A lower bound of the sup over all pairs in [a, b].
/// Pairs with s >= t are rejected.
double holder_field_norm(std::span<const FieldSample> samples, double exponent);

struct GrrResult {
  double value = 0.0;
  std::size_t band_cells = 0;
  /// Same functional with the excluded band halved (one cell narrower when
  /// band_cells is odd); NaN when band_cells == 1.
  double half_band_value = 0.0;
  double band_sensitivity = 0.0;  // |half - value| / value
  /// Band sensitivity above 5 percent: the integrand may not be integrable.
  bool flagged = false;
};

/// Discrete R_{n,p} = (int int |A(s,t)|^{2p} / |t - s|^{4 beta p + 2} ds dt)^{1/(2p)}
/// over [0, cells * step]^2 with trapezoid weights, the diagonal band
/// |t - s| < band_cells * step excluded and the lower triangle filled by
/// symmetry. `a(m0, m1)` is called for m0 < m1.
GrrResult grr_functional(const std::function<double(std::size_t, std::size_t)>& a,
                         std::size_t cells, double step, double beta, double p,
                         std::size_t band_cells = 1);

}  // namespace ouarea
