#include "ouarea/area.hpp"

#include <cmath>
#include <stdexcept>

#include "ouarea/kernels.hpp"

namespace ouarea {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("area: eigenvalue must be finite and nonnegative");
}

void check_window(const PathGrid& path, const WindowPair& w) {
  if (w.m0 > w.m1 || w.m1 > path.cell_count())
    throw std::out_of_range("area: window does not fit the path grid");
}

}  // namespace

WindowPair make_window(const PathGrid& path, std::size_t m0, std::size_t m1) {
  WindowPair w{m0, m1};
  check_window(path, w);
  return w;
}

WindowPair make_window(const PathGrid& path, double s, double t) {
  if (!(s <= t)) throw std::invalid_argument("area: window requires s <= t");
  return make_window(path, grid_index(path, s), grid_index(path, t));
}

double window_start(const PathGrid& path, const WindowPair& w) { return path.time(w.m0); }
double window_end(const PathGrid& path, const WindowPair& w) { return path.time(w.m1); }

std::vector<WindowPair> dyadic_windows(unsigned level, unsigned scales) {
  if (scales > level) throw std::invalid_argument("dyadic_windows: more scales than grid levels");
  std::vector<WindowPair> out;
  for (unsigned k = 1; k <= scales; ++k) {
    const std::size_t width = std::size_t{1} << (level - k);
    const std::size_t count = std::size_t{1} << k;
    for (std::size_t q = 0; q < count; ++q) out.push_back({q * width, (q + 1) * width});
  }
  return out;
}

std::vector<double> area_sweep(const PathGrid& path, double lambda, std::size_t j,
                               std::size_t k, std::size_t m0, std::size_t end) {
  check_lambda(lambda);
  check_window(path, {m0, end});
  const auto rj = path.raw(j);
  const auto rk = path.raw(k);
  const double x = lambda * path.step();
  const double diag = phi(x);
  const double rect = psi(x);
  const double decay = std::exp(-x);

  std::vector<double> out(end - m0 + 1, 0.0);
  // prefix = sum_{m' < m} dj(m') e^{-x (m - 1 - m')}
  double prefix = 0.0;
  double acc = 0.0;
  for (std::size_t m = m0 + 1; m <= end; ++m) {
    const double dj = rj[m] - rj[m - 1];
    const double dk = rk[m] - rk[m - 1];
    acc += dk * (dj * diag + rect * prefix);
    out[m - m0] = acc;
    prefix = decay * prefix + dj;
  }
  return out;
}

double area_component(const PathGrid& path, double lambda, std::size_t j, std::size_t k,
                      const WindowPair& w) {
  return area_sweep(path, lambda, j, k, w.m0, w.m1).back();
}

double area_component(const PathGrid& path, const SpectrumConfig& cfg, std::size_t i,
                      std::size_t j, std::size_t k, const WindowPair& w) {
  return area_component(path, cfg.eigenvalue(i), j, k, w);
}

double plain_area_component(const PathGrid& path, std::size_t j, std::size_t k,
                            const WindowPair& w) {
  check_window(path, w);
  const auto rj = path.raw(j);
  const auto rk = path.raw(k);
  double acc = 0.0;
  for (std::size_t m = w.m0 + 1; m <= w.m1; ++m) {
    const double dj = rj[m] - rj[m - 1];
    const double dk = rk[m] - rk[m - 1];
    acc += (rj[m - 1] - rj[w.m0]) * dk + 0.5 * dj * dk;
  }
  return acc;
}

double drift_component(const PathGrid& path, double lambda, std::size_t j, std::size_t k,
                       const WindowPair& w) {
  check_lambda(lambda);
  check_window(path, w);
  const auto rj = path.raw(j);
  const auto rk = path.raw(k);
  const double x = lambda * path.step();
  const double decay = std::exp(-x);
  const double gain = -std::expm1(-x);
  const double c = chi(x);
  const double xphi = x * phi(x);
  const double hmp = half_minus_phi(x);

  double g = 0.0;  // G at the left node of the current cell
  double acc = 0.0;
  for (std::size_t m = w.m0 + 1; m <= w.m1; ++m) {
    const double dj = rj[m] - rj[m - 1];
    const double dk = rk[m] - rk[m - 1];
    const double xl = rj[m - 1] - rj[w.m0];
    acc += dk * (c * g + xphi * xl + hmp * dj);
    g = decay * g + gain * xl + xphi * dj;
  }
  return acc;
}

double conv_integral_left(const PathGrid& path, double lambda, std::size_t j,
                          const WindowPair& w) {
  check_lambda(lambda);
  check_window(path, w);
  const auto r = path.raw(j);
  const double x = lambda * path.step();
  const double decay = std::exp(-x);
  const double c = chi(x);
  double acc = 0.0;
  for (std::size_t m = w.m0 + 1; m <= w.m1; ++m) acc = decay * acc + c * (r[m] - r[m - 1]);
  return acc;
}

double conv_integral_right(const PathGrid& path, double lambda, std::size_t k,
                           const WindowPair& w) {
  check_lambda(lambda);
  check_window(path, w);
  const auto r = path.raw(k);
  const double x = lambda * path.step();
  const double c = chi(x);
  double acc = 0.0;
  for (std::size_t m = w.m0 + 1; m <= w.m1; ++m)
    acc += c * std::exp(-x * static_cast<double>(m - 1 - w.m0)) * (r[m] - r[m - 1]);
  return acc;
}

double chen_residual(const PathGrid& path, double lambda, std::size_t j, std::size_t k,
                     std::size_t m0, std::size_t mt, std::size_t m1) {
  if (!(m0 <= mt && mt <= m1)) throw std::invalid_argument("chen_residual: requires s <= tau <= t");
  const WindowPair whole = make_window(path, m0, m1);
  const WindowPair head{m0, mt};
  const WindowPair tail{mt, m1};
  return area_component(path, lambda, j, k, whole) - area_component(path, lambda, j, k, tail) -
         area_component(path, lambda, j, k, head) -
         conv_integral_left(path, lambda, j, head) * conv_integral_right(path, lambda, k, tail);
}

double ito_stratonovich_correction(std::size_t j, std::size_t k, double s, double t) {
  if (!(s <= t)) throw std::invalid_argument("ito_stratonovich_correction: requires s <= t");
  return j == k ? 0.5 * (t - s) : 0.0;
}

InnerDriftProfile::InnerDriftProfile(const PathGrid& path, double lambda, std::size_t j,
                                     const WindowPair& w)
    : s_(window_start(path, w)), step_(path.step()), lambda_(lambda) {
  check_lambda(lambda);
  check_window(path, w);
  const auto r = path.raw(j);
  const double x = lambda * step_;
  const double decay = std::exp(-x);
  const double gain = -std::expm1(-x);
  const double xphi = x * phi(x);
  g_.assign(w.cells() + 1, 0.0);
  x_.assign(w.cells() + 1, 0.0);
  for (std::size_t m = 1; m <= w.cells(); ++m) {
    const std::size_t node = w.m0 + m;
    x_[m] = r[node] - r[w.m0];
    g_[m] = decay * g_[m - 1] + gain * x_[m - 1] + xphi * (r[node] - r[node - 1]);
  }
}

double InnerDriftProfile::operator()(double xi) const {
  const double pos = (xi - s_) / step_;
  const std::size_t cells = g_.size() - 1;
  if (!(pos >= -1e-12) || pos > static_cast<double>(cells) * (1.0 + 1e-12))
    throw std::out_of_range("InnerDriftProfile: point outside the window");
  if (pos <= 0.0 || cells == 0) return 0.0;
  auto m = static_cast<std::size_t>(pos);
  if (m >= cells) return g_[cells];
  const double frac = pos - static_cast<double>(m);
  if (frac == 0.0) return g_[m];
  const double y = lambda_ * step_ * frac;
  const double slope = x_[m + 1] - x_[m];
  return std::exp(-y) * g_[m] - std::expm1(-y) * x_[m] + slope * frac * y * phi(y);
}

}  // namespace ouarea
