#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ouarea {

class CovarianceSpec;

/// Eigenvalues given verbatim.
struct ExplicitSpectrum {};

/// lambda_i = scale * i^(2/dim), i = 1, 2, ...  (Laplacian-type growth).
struct PowerLawSpectrum {
  double scale;
  double dim;
};

using SpectrumLaw = std::variant<ExplicitSpectrum, PowerLawSpectrum>;

/// Truncated point spectrum of -A together with the smoothness index kappa of
/// the target space V_kappa. Mode indices are zero-based throughout the
/// library: eigenvalue(0) is the smallest eigenvalue.
///
/// Immutable after construction.
class SpectrumConfig {
 public:
  static SpectrumConfig explicit_list(std::vector<double> eigenvalues, double kappa);
  static SpectrumConfig power_law(std::size_t modes, double scale, double dim, double kappa);
  /// Dirichlet Laplacian on the unit interval: lambda_i = pi^2 i^2.
  static SpectrumConfig dirichlet_laplacian(std::size_t modes = 16, double kappa = 0.3);

  std::size_t mode_count() const noexcept { return eigenvalues_.size(); }
  double kappa() const noexcept { return kappa_; }
  const SpectrumLaw& law() const noexcept { return law_; }
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }

  /// Throws std::out_of_range for i >= mode_count().
  double eigenvalue(std::size_t i) const;

  /// exp(-lambda_i t); t must be nonnegative.
  double semigroup_factor(std::size_t i, double t) const;

  /// lambda_i^(-kappa), the weight of mode i in the area's Hilbert-Schmidt norm.
  double mode_weight(std::size_t i) const;

  /// Same eigenvalues, different kappa.
  SpectrumConfig with_kappa(double kappa) const;

  std::string describe() const;

 private:
  SpectrumConfig(std::vector<double> eigenvalues, double kappa, SpectrumLaw law);

  std::vector<double> eigenvalues_;
  double kappa_;
  SpectrumLaw law_;
};

/// sqrt(sum_i coeffs_i^2 lambda_i^(2 kappa)).
double vkappa_norm(const SpectrumConfig& cfg, std::span<const double> coeffs, double kappa);

/// One series sum_i lambda_i^exponent, truncated at the configured modes.
struct SeriesSummary {
  std::string name;
  double lambda_exponent = 0.0;
  double partial_sum = 0.0;
  /// Exponent of i in the power-law case (lambda_i^a ~ i^(2a/d)).
  std::optional<double> index_exponent;
  /// Integral-test estimate of the omitted tail; absent when divergent or explicit.
  std::optional<double> tail_estimate;
  /// Power-law case only: false when the integral test fails.
  std::optional<bool> convergent;
};

struct SummabilityReport {
  double nu = 0.0;
  int p = 0;
  double kappa = 0.0;
  double covariance_trace = 0.0;
  std::vector<SeriesSummary> series;  // -nu p/(p-1), p(nu-2kappa)+1, -2kappa
  bool any_divergent() const;
};

/// Partial sums of the three spectral series that control the area's moments
/// and an integral-test tail (power-law spectra). Divergence is reported, not
/// thrown. Requires p >= 2.
SummabilityReport summability_report(const SpectrumConfig& cfg, const CovarianceSpec& cov,
                                     double nu, int p);

}  // namespace ouarea
