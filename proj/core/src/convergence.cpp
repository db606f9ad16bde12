#include "ouarea/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ouarea/field_norms.hpp"
#include "ouarea/parallel.hpp"
#include "ouarea/seeding.hpp"
#include "ouarea/statistics.hpp"
#include "ouarea/tensor.hpp"

namespace ouarea {

namespace {

struct SeedErrors {
  // [level][window] Hilbert-Schmidt distance to the reference tensors
  std::vector<std::vector<double>> hs;
  std::vector<double> field;  // [level]
  std::vector<double> max_window_ratio;
};

std::vector<WindowPair> at_level(const std::vector<WindowPair>& ref, unsigned from, unsigned to) {
  const std::size_t stride = std::size_t{1} << (from - to);
  std::vector<WindowPair> out;
  for (const auto& w : ref) out.push_back({w.m0 / stride, w.m1 / stride});
  return out;
}

double rms_over(const std::vector<SeedErrors>& errs, std::span<const std::size_t> seeds,
                std::size_t level) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t s : seeds)
    for (double d : errs[s].hs[level]) {
      sum += d * d;
      ++n;
    }
  return std::sqrt(sum / static_cast<double>(n));
}

}  // namespace

StudyReport convergence_study(const ConvergenceConfig& cfg) {
  if (cfg.levels.empty()) throw std::invalid_argument("convergence_study: no levels");
  const unsigned nmax = *std::max_element(cfg.levels.begin(), cfg.levels.end());
  if (cfg.reference_level < nmax + 2)
    throw std::invalid_argument("convergence_study: reference level must exceed the finest level by 2");
  if (cfg.seeds < 2) throw std::invalid_argument("convergence_study: at least two seeds required");
  const unsigned nmin = *std::min_element(cfg.levels.begin(), cfg.levels.end());
  if (cfg.window_scales > nmin)
    throw std::invalid_argument("convergence_study: window scales exceed the coarsest level");

  const auto ref_windows = dyadic_windows(cfg.reference_level, cfg.window_scales);
  const FbmSampler sampler(cfg.hurst, cfg.reference_level, cfg.horizon, cfg.policy);
  const std::size_t nj = cfg.covariance.mode_count();
  const double two_beta = 2.0 * cfg.beta;

  std::vector<SeedErrors> errs(cfg.seeds);
  parallel_for(cfg.seeds, cfg.threads, [&](std::size_t s) {
    const PathGrid fine = sample_qfbm(sampler, nj, derive_seed(cfg.seed, s));
    const auto ref = scaled_tensors(fine, cfg.spectrum, cfg.covariance, ref_windows);
    SeedErrors& e = errs[s];
    for (unsigned n : cfg.levels) {
      const PathGrid coarse = coarsen(fine, n);
      const auto tensors = scaled_tensors(coarse, cfg.spectrum, cfg.covariance,
                                          at_level(ref_windows, cfg.reference_level, n));
      std::vector<double> d(ref.size());
      std::vector<FieldSample> field;
      double max_ratio = 0.0;
      for (std::size_t w = 0; w < ref.size(); ++w) {
        d[w] = hs_distance(tensors[w], ref[w]);
        field.push_back({ref[w].s(), ref[w].t(), d[w]});
        max_ratio = std::max(max_ratio, d[w] / std::pow(ref[w].t() - ref[w].s(), two_beta));
      }
      e.hs.push_back(std::move(d));
      e.field.push_back(holder_field_norm(field, two_beta));
      e.max_window_ratio.push_back(max_ratio);
    }
  });

  StudyReport rep;
  rep.kind = "convergence";
  rep.params = {{"hurst", cfg.hurst},
                {"beta", cfg.beta},
                {"levels", cfg.levels},
                {"reference_level", cfg.reference_level},
                {"horizon", cfg.horizon},
                {"spectral_modes", cfg.spectrum.mode_count()},
                {"noise_modes", nj},
                {"kappa", cfg.spectrum.kappa()},
                {"spectrum", cfg.spectrum.describe()},
                {"covariance", cfg.covariance.describe()},
                {"seed", cfg.seed},
                {"seeds", cfg.seeds},
                {"windows", ref_windows.size()},
                {"window_scales", cfg.window_scales},
                {"generator", to_string(sampler.generator())},
                {"bootstrap_replicates", cfg.bootstrap_replicates}};

  std::vector<std::size_t> all(cfg.seeds);
  for (std::size_t s = 0; s < cfg.seeds; ++s) all[s] = s;
  std::vector<double> logd, logr, logf;
  for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
    LevelMetrics m;
    m.level = cfg.levels[l];
    m.step = cfg.horizon * std::ldexp(1.0, -static_cast<int>(m.level));
    m.values["rms_hs"] = rms_over(errs, all, l);
    double field = 0.0, ratio = 0.0;
    for (const auto& e : errs) {
      field += e.field[l];
      ratio = std::max(ratio, e.max_window_ratio[l]);
    }
    m.values["field_norm"] = field / static_cast<double>(cfg.seeds);
    m.values["max_window_ratio"] = ratio;
    logd.push_back(std::log(m.step));
    logr.push_back(std::log(m.values["rms_hs"]));
    logf.push_back(std::log(m.values["field_norm"]));
    rep.levels.push_back(std::move(m));
  }

  const auto rms_slope = [&](std::span<const std::size_t> seeds) {
    std::vector<double> y;
    for (std::size_t l = 0; l < cfg.levels.size(); ++l) y.push_back(std::log(rms_over(errs, seeds, l)));
    return linear_fit(logd, y).slope;
  };
  const auto field_slope = [&](std::span<const std::size_t> seeds) {
    std::vector<double> y;
    for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
      double f = 0.0;
      for (std::size_t s : seeds) f += errs[s].field[l];
      y.push_back(std::log(f / static_cast<double>(seeds.size())));
    }
    return linear_fit(logd, y).slope;
  };

  const auto fit_rms = linear_fit(logd, logr);
  const auto fit_field = linear_fit(logd, logf);
  const auto ci_rms = bootstrap_interval(cfg.seeds, rms_slope, cfg.bootstrap_replicates,
                                         derive_seed(cfg.seed, {0xb007, 1}));
  const auto ci_field = bootstrap_interval(cfg.seeds, field_slope, cfg.bootstrap_replicates,
                                           derive_seed(cfg.seed, {0xb007, 2}));
  rep.fits.push_back({"rms_hs_slope", fit_rms.slope, fit_rms.intercept, ci_rms, "bootstrap-seeds",
                      nmin, nmax, cfg.seeds});
  rep.fits.push_back({"field_norm_slope", fit_field.slope, fit_field.intercept, ci_field,
                      "bootstrap-seeds", nmin, nmax, cfg.seeds});

  auto bounds = cfg.slope_bounds;
  if (!bounds && cfg.hurst == 0.5) bounds = std::make_pair(0.35, 0.65);
  if (bounds) rep.checks.push_back(make_check("rms_slope", fit_rms.slope, bounds->first, bounds->second));
  rep.checks.push_back(make_check("rms_slope_ci_lower", ci_rms.lower, 0.0, unbounded,
                                  "positive decay rate"));

  double increases = 0.0;
  for (std::size_t a = 0; a < rep.levels.size(); ++a)
    for (std::size_t b = 0; b < rep.levels.size(); ++b)
      if (rep.levels[b].level == rep.levels[a].level + 1 &&
          !(rep.levels[b].values.at("rms_hs") < rep.levels[a].values.at("rms_hs")))
        increases += 1.0;
  rep.checks.push_back(make_check("rms_non_decreasing_steps", increases, 0.0, 0.0,
                                  "errors strictly decrease level to level"));

  double worst = unbounded;
  for (const auto& e : errs)
    for (std::size_t l = 0; l < cfg.levels.size(); ++l)
      worst = std::min(worst, e.field[l] - e.max_window_ratio[l]);
  rep.checks.push_back(make_check("field_norm_dominates_windows", worst, 0.0, unbounded));
  return rep;
}

}  // namespace ouarea
