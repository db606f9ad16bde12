#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ouarea/area.hpp"
#include "ouarea/path_grid.hpp"
#include "ouarea/spectrum.hpp"

namespace ouarea {

/// Quadrature for compensated fractional derivatives and the correction
/// integral. Panels are graded geometrically toward each singular endpoint:
/// `level` panels with ratio `ratio`, `points` Gauss-Legendre nodes each.
/// The fractional derivatives never grade below 1e-9 of the distance to the
/// base point; past that depth the ratio is widened instead.
struct FracQuadConfig {
  double alpha = 0.5;
  unsigned level = 16;
  unsigned points = 12;
  double ratio = 0.25;
  /// Refinement stops with a non-converged flag beyond this level.
  unsigned max_level = 32;
  double tolerance = 1e-3;

  /// (1 - beta) + 0.6 (gamma - (1 - beta)).
  static double default_alpha(double beta, double gamma = 0.9);
  static FracQuadConfig for_beta(double beta, double gamma = 0.9);

  /// Throws std::invalid_argument unless 0 < alpha < 1, level >= 1,
  /// 0 < ratio < 1 and `points` is a supported rule size.
  void validate() const;
  /// validate() plus alpha + beta > 1.
  void validate_for(double beta) const;

  /// level + 4, points + 2.
  FracQuadConfig refined() const;
};

using RealFunction = std::function<double(double)>;

/// D^alpha_{s+} f(xi) = (f(xi) (xi - s)^{-alpha}
///   + alpha int_s^xi (f(xi) - f(r)) (xi - r)^{-1-alpha} dr) / Gamma(1 - alpha).
/// `node_spacing` > 0 marks kinks of f on the grid s + m * spacing.
double frac_deriv_left(const RealFunction& f, double s, double xi, const FracQuadConfig& fq,
                       double node_spacing = 0.0);

/// Right-sided derivative of order 1 - alpha of g - g(t), unit sign factor:
/// ((g(xi) - g(t)) (t - xi)^{alpha - 1}
///   + (1 - alpha) int_xi^t (g(xi) - g(r)) (r - xi)^{alpha - 2} dr) / Gamma(alpha).
double frac_deriv_right(const RealFunction& g, double t, double xi, const FracQuadConfig& fq,
                        double node_spacing = 0.0);

/// Outer quadrature nodes on a grid-aligned window: every cell is split in
/// halves graded toward both cell ends. Panels too thin to keep their nodes
/// strictly inside (s, t) in floating point are dropped.
struct OuterRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
OuterRule outer_rule(double s, double t, double step, const FracQuadConfig& fq);

struct CorrectionResult {
  double value = 0.0;
  /// Value at the last level before `value`.
  double previous = 0.0;
  double relative_change = 0.0;
  unsigned level = 0;
  unsigned points = 0;
  std::size_t outer_nodes = 0;
  bool converged = false;
};

/// int_s^t D^alpha_{s+}(-G)(xi) D^{1-alpha}_{t-}(omega_k)(xi) d xi with G the
/// inner drift profile of (lambda_i, j). Equals drift_component for
/// piecewise-linear paths. Refines until two successive levels agree to
/// fq.tolerance or max_level is exceeded.
CorrectionResult correction_integral(const PathGrid& path, const SpectrumConfig& cfg,
                                     std::size_t i, std::size_t j, std::size_t k,
                                     const WindowPair& w, const FracQuadConfig& fq);

/// All (i, j, k) for i in `spectral`, all noise modes j, k < J. Fractional
/// derivatives are shared across components; the result is indexed
/// [(ii * J + j) * J + k] with ii the position in `spectral`.
std::vector<CorrectionResult> correction_integrals(const PathGrid& path,
                                                   const SpectrumConfig& cfg,
                                                   const std::vector<std::size_t>& spectral,
                                                   std::size_t noise_modes, const WindowPair& w,
                                                   const FracQuadConfig& fq,
                                                   unsigned threads = 1);

struct KernelBoundLevel {
  unsigned level = 0;
  double holder_norm = 0.0;
  /// sup over grid points xi of |G(xi)| / ((xi - s)^beta ||omega_j||_beta).
  double constant = 0.0;
};

struct KernelBoundReport {
  double beta = 0.0;
  std::vector<KernelBoundLevel> levels;
  /// Log-log slope of |G(s + h)| for h = cell / 2^r, r = 1..8, at the finest level.
  double onset_exponent = 0.0;
  double max_constant = 0.0;
  /// Every constant is at most 3, the bound implied by the grid seminorm of
  /// a piecewise-linear interpolant.
  bool bounded = true;
  bool identically_zero = false;
};

/// Empirical constant of |G(xi)| <= c ||omega_j||_beta (xi - s)^beta on the
/// path at its own level and at `coarser` levels below it.
KernelBoundReport kernel_bound_check(const PathGrid& path, double lambda, std::size_t j,
                                     const WindowPair& w, double beta, unsigned coarser = 3);

}  // namespace ouarea
