#include "ouarea/statistics.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "ouarea/seeding.hpp"

namespace ouarea {

MeanEstimate mean_estimate(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean_estimate: no values");
  MeanEstimate e;
  e.count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(e.count);
  if (e.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.variance = ss / static_cast<double>(e.count - 1);
    e.standard_error = std::sqrt(e.variance / static_cast<double>(e.count));
  }
  return e;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need at least two paired points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t q = 0; q < x.size(); ++q) {
    mx += x[q];
    my += y[q];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t q = 0; q < x.size(); ++q) {
    sxx += (x[q] - mx) * (x[q] - mx);
    sxy += (x[q] - mx) * (y[q] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: abscissae are all equal");
  LinearFit f;
  f.count = x.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.slope_se = std::numeric_limits<double>::quiet_NaN();
  if (x.size() > 2) {
    double rss = 0.0;
    for (std::size_t q = 0; q < x.size(); ++q) {
      const double r = y[q] - f.intercept - f.slope * x[q];
      rss += r * r;
    }
    f.slope_se = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return f;
}

Interval student_interval(double mean, double se, std::size_t dof, double level) {
  if (dof < 1) throw std::invalid_argument("student_interval: need at least one degree of freedom");
  const boost::math::students_t dist(static_cast<double>(dof));
  const double q = boost::math::quantile(dist, 0.5 + 0.5 * level);
  return {mean - q * se, mean + q * se, level};
}

Interval bootstrap_interval(std::size_t n,
                            const std::function<double(std::span<const std::size_t>)>& statistic,
                            std::size_t replicates, std::uint64_t seed, double level) {
  if (n == 0 || replicates < 2) throw std::invalid_argument("bootstrap_interval: empty input");
  std::mt19937_64 engine(mix64(seed));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> idx(n);
  std::vector<double> stats;
  stats.reserve(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    for (auto& v : idx) v = pick(engine);
    stats.push_back(statistic(idx));
  }
  std::sort(stats.begin(), stats.end());
  const auto at = [&](double p) {
    const double pos = p * static_cast<double>(replicates - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, replicates - 1);
    return stats[lo] + (pos - static_cast<double>(lo)) * (stats[hi] - stats[lo]);
  };
  return {at(0.5 - 0.5 * level), at(0.5 + 0.5 * level), level};
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double v = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] == v) ++ia;
    while (ib < b.size() && b[ib] == v) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  return d;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
  if (n == 0 || m == 0) throw std::invalid_argument("ks_critical_value: empty sample");
  double c = 0.0;
  if (alpha == 0.10) c = 1.224;
  else if (alpha == 0.05) c = 1.358;
  else if (alpha == 0.01) c = 1.628;
  else if (alpha == 0.001) c = 1.949;
  else throw std::invalid_argument("ks_critical_value: unsupported significance level");
  const auto dn = static_cast<double>(n);
  const auto dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

}  // namespace ouarea
