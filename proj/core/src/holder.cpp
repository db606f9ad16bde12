#include "ouarea/holder.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ouarea {

namespace {

double scan_all_pairs(std::span<const double> f, std::size_t stride, double step, double beta,
                      std::size_t& pairs) {
  const std::size_t count = (f.size() - 1) / stride + 1;
  double best = 0.0;
  for (std::size_t lag = 1; lag < count; ++lag) {
    const double scale = std::pow(static_cast<double>(lag * stride) * step, -beta);
    double widest = 0.0;
    for (std::size_t a = 0; a + lag < count; ++a)
      widest = std::max(widest, std::abs(f[(a + lag) * stride] - f[a * stride]));
    best = std::max(best, widest * scale);
    pairs += count - lag;
  }
  return best;
}

}  // namespace

HolderEstimate holder_seminorm(std::span<const double> values, double step, double beta,
                               std::size_t subsample_cap) {
  if (values.size() < 2) throw std::invalid_argument("holder_seminorm: need at least two points");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("holder_seminorm: beta must lie in (0, 1)");
  if (!(step > 0.0)) throw std::invalid_argument("holder_seminorm: step must be positive");
  if (subsample_cap < 2) throw std::invalid_argument("holder_seminorm: cap must be at least 2");

  HolderEstimate est;
  if (values.size() <= subsample_cap) {
    est.value = scan_all_pairs(values, 1, step, beta, est.pairs);
    return est;
  }
  est.exhaustive = false;
  const std::size_t stride = (values.size() - 2) / (subsample_cap - 1) + 1;
  est.value = scan_all_pairs(values, stride, step, beta, est.pairs);
  const double adjacent_scale = std::pow(step, -beta);
  for (std::size_t a = 0; a + 1 < values.size(); ++a)
    est.value = std::max(est.value, std::abs(values[a + 1] - values[a]) * adjacent_scale);
  est.pairs += values.size() - 1;
  return est;
}

}  // namespace ouarea
