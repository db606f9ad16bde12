#include "ouarea/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ouarea/area.hpp"
#include "ouarea/fbm.hpp"
#include "ouarea/kernels.hpp"
#include "ouarea/parallel.hpp"
#include "ouarea/seeding.hpp"
#include "ouarea/statistics.hpp"
#include "ouarea/tensor.hpp"

namespace ouarea {

namespace {

std::size_t cells_for(double fraction, unsigned level) {
  const double c = fraction * std::ldexp(1.0, static_cast<int>(level));
  const double r = std::round(c);
  if (r < 1.0 || std::abs(c - r) > 1e-9 || fraction > 1.0)
    throw std::invalid_argument("moment_suite: window width is not aligned with the grid");
  return static_cast<std::size_t>(r);
}

double mean_of(const std::vector<double>& v, std::span<const std::size_t> idx) {
  double s = 0.0;
  for (std::size_t q : idx) s += v[q];
  return s / static_cast<double>(idx.size());
}

}  // namespace

StudyReport moment_suite(const MomentConfig& cfg) {
  if (cfg.samples < 10000) throw std::invalid_argument("moment_suite: at least 10^4 samples required");
  if (cfg.p < 1) throw std::invalid_argument("moment_suite: p must be at least 1");
  if (cfg.width_fractions.size() < 2) throw std::invalid_argument("moment_suite: need two window widths");
  const std::size_t nj = cfg.covariance.mode_count();
  if (cfg.j >= nj || cfg.k >= nj) throw std::out_of_range("moment_suite: noise mode out of range");
  const std::size_t koff = cfg.k != cfg.j ? cfg.k : (cfg.j + 1) % nj;
  if (koff == cfg.j) throw std::invalid_argument("moment_suite: off-diagonal moments need two noise modes");
  unsigned finest = cfg.level;
  for (unsigned l : cfg.difference_levels) finest = std::max(finest, l);
  if (cfg.reference_level < finest)
    throw std::invalid_argument("moment_suite: reference level below a compared level");
  const double lambda = cfg.spectrum.eigenvalue(cfg.i);
  const double two_p = 2.0 * cfg.p;

  std::vector<WindowPair> windows;
  for (double f : cfg.width_fractions) windows.push_back({0, cells_for(f, cfg.level)});
  const WindowPair widest = *std::max_element(
      windows.begin(), windows.end(), [](const auto& a, const auto& b) { return a.m1 < b.m1; });
  const double width = cfg.horizon * static_cast<double>(widest.m1) *
                       std::ldexp(1.0, -static_cast<int>(cfg.level));
  const WindowPair widest_ref{0, widest.m1 << (cfg.reference_level - cfg.level)};

  const FbmSampler sampler(0.5, cfg.reference_level, cfg.horizon);
  const std::size_t n = cfg.samples;
  std::vector<double> diag(n), off(n);
  std::vector<std::vector<double>> norms(windows.size(), std::vector<double>(n));
  std::vector<std::vector<double>> diffs(cfg.difference_levels.size(), std::vector<double>(n));

  parallel_for(n, cfg.threads, [&](std::size_t q) {
    const PathGrid ref = sample_qfbm(sampler, nj, derive_seed(cfg.seed, q));
    const PathGrid path = coarsen(ref, cfg.level);
    diag[q] = area_component(path, lambda, cfg.j, cfg.j, widest);
    off[q] = area_component(path, lambda, cfg.j, koff, widest);
    const auto tensors = scaled_tensors(path, cfg.spectrum, cfg.covariance, windows);
    for (std::size_t w = 0; w < windows.size(); ++w) norms[w][q] = std::pow(hs_norm(tensors[w]), two_p);
    const double a_ref = area_component(ref, lambda, cfg.j, cfg.k, widest_ref);
    for (std::size_t l = 0; l < cfg.difference_levels.size(); ++l) {
      const unsigned lvl = cfg.difference_levels[l];
      const PathGrid c = coarsen(ref, lvl);
      const WindowPair wl{0, widest_ref.m1 >> (cfg.reference_level - lvl)};
      diffs[l][q] = std::pow(std::abs(a_ref - area_component(c, lambda, cfg.j, cfg.k, wl)), two_p);
    }
  });

  StudyReport rep;
  rep.kind = "moments";
  rep.params = {{"hurst", 0.5},
                {"i", cfg.i},
                {"j", cfg.j},
                {"k", cfg.k},
                {"k_offdiagonal", koff},
                {"p", cfg.p},
                {"level", cfg.level},
                {"reference_level", cfg.reference_level},
                {"difference_levels", cfg.difference_levels},
                {"width_fractions", cfg.width_fractions},
                {"horizon", cfg.horizon},
                {"samples", n},
                {"seed", cfg.seed},
                {"spectral_modes", cfg.spectrum.mode_count()},
                {"noise_modes", nj},
                {"kappa", cfg.spectrum.kappa()},
                {"spectrum", cfg.spectrum.describe()},
                {"covariance", cfg.covariance.describe()},
                {"generator", to_string(sampler.generator())},
                {"bootstrap_replicates", cfg.bootstrap_replicates}};

  const double step = cfg.horizon * std::ldexp(1.0, -static_cast<int>(cfg.level));
  const double expected = width * phi(lambda * step);
  const auto md = mean_estimate(diag);
  const auto mo = mean_estimate(off);
  rep.extra["diagonal_mean"] = md.mean;
  rep.extra["diagonal_se"] = md.standard_error;
  rep.extra["diagonal_expected"] = expected;
  rep.extra["offdiagonal_mean"] = mo.mean;
  rep.extra["offdiagonal_se"] = mo.standard_error;
  rep.checks.push_back(make_check("diagonal_mean_z", (md.mean - expected) / md.standard_error, -3.0, 3.0,
                                  "E a_ijj = (t - s) phi(lambda_i delta)"));
  rep.checks.push_back(make_check("offdiagonal_mean_z", mo.mean / mo.standard_error, -3.0, 3.0,
                                  "E a_ijk = 0 for j != k"));

  std::vector<double> logw, logm;
  nlohmann::json norm_rows = nlohmann::json::array();
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const auto e = mean_estimate(norms[w]);
    const double wt = cfg.horizon * cfg.width_fractions[w];
    logw.push_back(std::log(wt));
    logm.push_back(std::log(e.mean));
    norm_rows.push_back({{"width", wt}, {"mean", e.mean}, {"se", e.standard_error}});
  }
  rep.extra["norm_moments"] = norm_rows;
  const auto fit_norm = linear_fit(logw, logm);
  const auto ci_norm = bootstrap_interval(
      n,
      [&](std::span<const std::size_t> idx) {
        std::vector<double> y;
        for (const auto& v : norms) y.push_back(std::log(mean_of(v, idx)));
        return linear_fit(logw, y).slope;
      },
      cfg.bootstrap_replicates, derive_seed(cfg.seed, {0xb007, 3}));
  rep.fits.push_back({"norm_moment_exponent", fit_norm.slope, fit_norm.intercept, ci_norm,
                      "bootstrap-samples", cfg.level, cfg.level, n});
  rep.checks.push_back(make_check("norm_moment_exponent", fit_norm.slope, two_p - 0.3, two_p + 0.3,
                                  "E ||T||^{2p} ~ (t - s)^{2p}"));
  if (ci_norm.upper - ci_norm.lower > 0.6) rep.flags.push_back("norm-moment-ci-too-wide");

  std::vector<double> logd, logdm;
  for (std::size_t l = 0; l < cfg.difference_levels.size(); ++l) {
    const unsigned lvl = cfg.difference_levels[l];
    const auto e = mean_estimate(diffs[l]);
    LevelMetrics m;
    m.level = lvl;
    m.step = cfg.horizon * std::ldexp(1.0, -static_cast<int>(lvl));
    m.values["difference_moment"] = e.mean;
    m.values["difference_moment_se"] = e.standard_error;
    logd.push_back(std::log(m.step));
    logdm.push_back(std::log(e.mean));
    rep.levels.push_back(std::move(m));
  }
  if (cfg.difference_levels.size() >= 2) {
    const auto fit_diff = linear_fit(logd, logdm);
    const auto ci_diff = bootstrap_interval(
        n,
        [&](std::span<const std::size_t> idx) {
          std::vector<double> y;
          for (const auto& v : diffs) y.push_back(std::log(mean_of(v, idx)));
          return linear_fit(logd, y).slope;
        },
        cfg.bootstrap_replicates, derive_seed(cfg.seed, {0xb007, 4}));
    const auto [lo, hi] = std::minmax_element(cfg.difference_levels.begin(), cfg.difference_levels.end());
    rep.fits.push_back({"difference_moment_slope", fit_diff.slope, fit_diff.intercept, ci_diff,
                        "bootstrap-samples", *lo, *hi, n});
    rep.checks.push_back(make_check("difference_moment_slope_ci_lower", ci_diff.lower, 0.0, unbounded,
                                    "positive power of delta"));
  }
  return rep;
}

}  // namespace ouarea
