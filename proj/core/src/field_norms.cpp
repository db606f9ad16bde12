#include "ouarea/field_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ouarea {

double holder_field_norm(std::span<const FieldSample> samples, double exponent) {
  if (samples.empty()) throw std::invalid_argument("holder_field_norm: no window pairs");
  double sup = 0.0;
  for (const auto& f : samples) {
    if (!(f.t > f.s)) throw std::invalid_argument("holder_field_norm: pairs need s < t");
    sup = std::max(sup, std::abs(f.value) / std::pow(f.t - f.s, exponent));
  }
  return sup;
}

namespace {

double grr_sum(const std::function<double(std::size_t, std::size_t)>& a, std::size_t cells,
               double step, double beta, double p, std::size_t band) {
  const double power = 4.0 * beta * p + 2.0;
  const auto weight = [&](std::size_t m) { return (m == 0 || m == cells) ? 0.5 * step : step; };
  double sum = 0.0;
  for (std::size_t m0 = 0; m0 <= cells; ++m0) {
    for (std::size_t m1 = m0 + band; m1 <= cells; ++m1) {
      const double v = std::abs(a(m0, m1));
      if (v == 0.0) continue;
      const double u = step * static_cast<double>(m1 - m0);
      sum += weight(m0) * weight(m1) * std::pow(v, 2.0 * p) / std::pow(u, power);
    }
  }
  return std::pow(2.0 * sum, 1.0 / (2.0 * p));
}

}  // namespace

GrrResult grr_functional(const std::function<double(std::size_t, std::size_t)>& a,
                         std::size_t cells, double step, double beta, double p,
                         std::size_t band_cells) {
  if (!(p >= 1.0)) throw std::invalid_argument("grr_functional: p must be at least 1");
  if (!(step > 0.0) || cells == 0) throw std::invalid_argument("grr_functional: empty grid");
  if (band_cells < 1) throw std::invalid_argument("grr_functional: band must exclude the diagonal");
  GrrResult r;
  r.band_cells = band_cells;
  r.value = grr_sum(a, cells, step, beta, p, band_cells);
  if (band_cells > 1) {
    r.half_band_value = grr_sum(a, cells, step, beta, p, band_cells / 2);
    r.band_sensitivity =
        r.value == 0.0 ? (r.half_band_value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                       : std::abs(r.half_band_value - r.value) / r.value;
    r.flagged = r.band_sensitivity > 0.05;
  } else {
    r.half_band_value = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

}  // namespace ouarea
