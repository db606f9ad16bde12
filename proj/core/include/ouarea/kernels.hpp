#pragma once

#include <cstddef>

namespace ouarea {

// Closed-form cell integrals of the kernel exp(-lambda (xi - r)) against a
// piecewise-linear path with constant slopes on cells of width delta. All
// kernels take the dimensionless x = lambda * delta >= 0 and throw
// std::domain_error for negative x.

/// (e^{-x} + x - 1) / x^2; 1/2 at 0, decreasing to 0.
double phi(double x);

/// 1/2 - phi(x), accurate for small x.
double half_minus_phi(double x);

/// (1 - e^{-x}) / x; 1 at 0.
double chi(double x);

/// chi(x)^2 = (1 - e^{-x})^2 / x^2; 1 at 0.
double psi(double x);

/// Diagonal cell: both integrators on the same cell.
double cell_triangle(double dj, double dk, double x);

/// Off-diagonal cell pair: inner increment dj on cell m', outer increment dk on
/// cell m = m' + gap, gap >= 1. Equals dj dk psi(x) e^{-x (gap - 1)}.
double cell_rectangle(double dj, double dk, std::size_t gap, double x);

}  // namespace ouarea
