#include "ouarea/kernels.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace ouarea {

namespace {

// Below this x, the closed forms lose digits to cancellation; series are used.
constexpr double series_cutoff = 0.1;

// 1/(k+2)! for k = 0..11.
constexpr std::array<double, 12> inv_factorials = [] {
  std::array<double, 12> c{};
  double f = 2.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = 1.0 / f;
    f *= static_cast<double>(k + 3);
  }
  return c;
}();

void require_nonnegative(double x) {
  if (!(x >= 0.0)) throw std::domain_error("kernel argument must be nonnegative");
}

// sum_{k >= first} (-x)^k / (k+2)!
double alternating_tail(double x, std::size_t first) {
  double sum = 0.0;
  for (std::size_t k = inv_factorials.size(); k-- > first;) sum = sum * (-x) + inv_factorials[k];
  return first == 0 ? sum : sum * std::pow(-x, static_cast<double>(first));
}

}  // namespace

double phi(double x) {
  require_nonnegative(x);
  if (x < series_cutoff) return alternating_tail(x, 0);
  return (std::expm1(-x) + x) / (x * x);
}

double half_minus_phi(double x) {
  require_nonnegative(x);
  if (x < series_cutoff) return -alternating_tail(x, 1);
  return 0.5 - phi(x);
}

double chi(double x) {
  require_nonnegative(x);
  if (x == 0.0) return 1.0;
  return -std::expm1(-x) / x;
}

double psi(double x) {
  const double c = chi(x);
  return c * c;
}

double cell_triangle(double dj, double dk, double x) { return dj * dk * phi(x); }

double cell_rectangle(double dj, double dk, std::size_t gap, double x) {
  if (gap < 1) throw std::invalid_argument("cell_rectangle: gap must be at least 1 (use cell_triangle)");
  return dj * dk * psi(x) * std::exp(-x * static_cast<double>(gap - 1));
}

}  // namespace ouarea
