#include "ouarea/level_one.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ouarea/parallel.hpp"
#include "ouarea/seeding.hpp"
#include "ouarea/statistics.hpp"

namespace ouarea {

std::vector<LevelOneErrors> level1_errors(std::span<const double> values, unsigned fine_level,
                                          double horizon, std::span<const unsigned> levels,
                                          std::span<const double> betas, std::size_t holder_cap) {
  const std::size_t cells = std::size_t{1} << fine_level;
  if (values.size() != cells + 1) throw std::invalid_argument("level1_errors: expected 2^n + 1 values");
  const double step = horizon / static_cast<double>(cells);
  std::vector<LevelOneErrors> out;
  std::vector<double> err(values.size());
  for (unsigned n : levels) {
    if (n > fine_level) throw std::invalid_argument("level1_errors: level above the sampled level");
    const std::size_t stride = std::size_t{1} << (fine_level - n);
    LevelOneErrors e;
    e.level = n;
    for (std::size_t a = 0; a < cells; a += stride) {
      const double left = values[a];
      const double slope = (values[a + stride] - left) / static_cast<double>(stride);
      for (std::size_t m = a; m < a + stride; ++m)
        err[m] = values[m] - (left + slope * static_cast<double>(m - a));
    }
    err[cells] = 0.0;
    for (double v : err) e.sup_error = std::max(e.sup_error, std::abs(v));
    for (double b : betas) e.holder_error.push_back(holder_seminorm(err, step, b, holder_cap).value);
    out.push_back(std::move(e));
  }
  return out;
}

StudyReport level1_rate_study(const LevelOneConfig& cfg) {
  if (cfg.betas.empty() || cfg.levels.size() < 2) throw std::invalid_argument("level1_rate_study: need betas and two levels");
  for (double b : cfg.betas)
    if (!(b > 0.0 && b < cfg.hurst)) throw std::invalid_argument("level1_rate_study: requires 0 < beta < H");
  if (cfg.seeds < 2) throw std::invalid_argument("level1_rate_study: at least two seeds required");
  for (unsigned n : cfg.levels)
    if (n >= cfg.reference_level) throw std::invalid_argument("level1_rate_study: levels must lie below the reference level");
  const FbmSampler sampler(cfg.hurst, cfg.reference_level, cfg.horizon, cfg.policy);

  std::vector<std::vector<LevelOneErrors>> per_seed(cfg.seeds);
  parallel_for(cfg.seeds, cfg.threads, [&](std::size_t s) {
    const auto path = sampler.sample(derive_seed(cfg.seed, s));
    per_seed[s] = level1_errors(path.values, cfg.reference_level, cfg.horizon, cfg.levels, cfg.betas,
                                cfg.holder_cap);
  });

  StudyReport rep;
  rep.kind = "level1";
  rep.params = {{"hurst", cfg.hurst},
                {"betas", cfg.betas},
                {"levels", cfg.levels},
                {"reference_level", cfg.reference_level},
                {"horizon", cfg.horizon},
                {"seed", cfg.seed},
                {"seeds", cfg.seeds},
                {"holder_cap", cfg.holder_cap},
                {"generator", to_string(sampler.generator())},
                {"bootstrap_replicates", cfg.bootstrap_replicates}};

  const std::size_t nl = cfg.levels.size();
  std::vector<double> logd;
  for (unsigned n : cfg.levels) logd.push_back(std::log(cfg.horizon * std::ldexp(1.0, -static_cast<int>(n))));
  // metric(s, l) -> value; slope of log(mean over seeds) against log delta
  const auto slope_of = [&](auto&& metric, std::span<const std::size_t> seeds) {
    std::vector<double> y;
    for (std::size_t l = 0; l < nl; ++l) {
      double sum = 0.0;
      for (std::size_t s : seeds) sum += metric(s, l);
      y.push_back(std::log(sum / static_cast<double>(seeds.size())));
    }
    return linear_fit(logd, y);
  };
  std::vector<std::size_t> all(cfg.seeds);
  for (std::size_t s = 0; s < cfg.seeds; ++s) all[s] = s;

  for (std::size_t l = 0; l < nl; ++l) {
    LevelMetrics m;
    m.level = cfg.levels[l];
    m.step = std::exp(logd[l]);
    double sup = 0.0;
    for (const auto& e : per_seed) sup += e[l].sup_error;
    m.values["sup_error"] = sup / static_cast<double>(cfg.seeds);
    for (std::size_t b = 0; b < cfg.betas.size(); ++b) {
      double h = 0.0;
      for (const auto& e : per_seed) h += e[l].holder_error[b];
      m.values["holder_error_beta_" + std::to_string(b)] = h / static_cast<double>(cfg.seeds);
    }
    rep.levels.push_back(std::move(m));
  }

  const auto [lo, hi] = std::minmax_element(cfg.levels.begin(), cfg.levels.end());
  for (std::size_t b = 0; b < cfg.betas.size(); ++b) {
    const auto metric = [&, b](std::size_t s, std::size_t l) { return per_seed[s][l].holder_error[b]; };
    const auto fit = slope_of(metric, all);
    const auto ci = bootstrap_interval(
        cfg.seeds, [&](std::span<const std::size_t> idx) { return slope_of(metric, idx).slope; },
        cfg.bootstrap_replicates, derive_seed(cfg.seed, {0xb007, 10 + b}));
    rep.fits.push_back({"holder_slope_beta_" + std::to_string(b), fit.slope, fit.intercept, ci,
                        "bootstrap-seeds", *lo, *hi, cfg.seeds});
    if (b == 0)
      rep.checks.push_back(make_check("holder_slope_ci_lower", ci.lower, 0.0, unbounded,
                                      "decay exponent of ||omega - omega^n||_beta excludes 0"));
  }
  const auto sup_metric = [&](std::size_t s, std::size_t l) { return per_seed[s][l].sup_error; };
  const auto sup_fit = slope_of(sup_metric, all);
  const auto sup_ci = bootstrap_interval(
      cfg.seeds, [&](std::span<const std::size_t> idx) { return slope_of(sup_metric, idx).slope; },
      cfg.bootstrap_replicates, derive_seed(cfg.seed, {0xb007, 9}));
  rep.fits.push_back({"sup_slope", sup_fit.slope, sup_fit.intercept, sup_ci, "bootstrap-seeds", *lo, *hi,
                      cfg.seeds});
  rep.checks.push_back(make_check("sup_slope", sup_fit.slope, cfg.hurst - 0.15, cfg.hurst + 0.15));
  return rep;
}

}  // namespace ouarea
