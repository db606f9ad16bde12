#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ouarea {

struct MeanEstimate {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double standard_error = 0.0;
  std::size_t count = 0;
};

MeanEstimate mean_estimate(std::span<const double> values);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;  // NaN with fewer than three points
  std::size_t count = 0;
};

/// Ordinary least squares y = intercept + slope x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;

  bool contains(double v) const noexcept { return lower <= v && v <= upper; }
  bool excludes_zero() const noexcept { return lower > 0.0 || upper < 0.0; }
};

/// mean +- t_{dof} quantile * se.
Interval student_interval(double mean, double se, std::size_t dof, double level = 0.95);

/// Percentile bootstrap: `statistic` receives resampled indices into [0, n).
Interval bootstrap_interval(std::size_t n,
                            const std::function<double(std::span<const std::size_t>)>& statistic,
                            std::size_t replicates, std::uint64_t seed, double level = 0.95);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic critical value c(alpha) sqrt((n + m) / (n m)) for alpha in
/// {0.10, 0.05, 0.01, 0.001}.
double ks_critical_value(std::size_t n, std::size_t m, double alpha = 0.01);

}  // namespace ouarea
