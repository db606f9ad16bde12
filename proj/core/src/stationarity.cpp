#include "ouarea/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ouarea/area.hpp"
#include "ouarea/parallel.hpp"
#include "ouarea/seeding.hpp"
#include "ouarea/statistics.hpp"
#include "ouarea/tensor.hpp"

namespace ouarea {

namespace {

double z_two_sample(const MeanEstimate& a, const MeanEstimate& b) {
  const double se = std::hypot(a.standard_error, b.standard_error);
  if (se == 0.0) return a.mean == b.mean ? 0.0 : unbounded;
  return (a.mean - b.mean) / se;
}

}  // namespace

StudyReport stationarity_check(const StationarityConfig& cfg) {
  const std::size_t cells = std::size_t{1} << cfg.level;
  const std::size_t nj = cfg.covariance.mode_count();
  if (cfg.j >= nj || cfg.k >= nj) throw std::out_of_range("stationarity_check: noise mode out of range");
  const std::size_t width = cfg.window_cells ? cfg.window_cells : cells / 4;
  const std::size_t tau_e = cfg.ensemble_shift ? cfg.ensemble_shift : cells / 2;
  if (width == 0 || width + tau_e > cells)
    throw std::invalid_argument("stationarity_check: shifted window overflows the horizon");
  if (cfg.level < 4) throw std::invalid_argument("stationarity_check: level must be at least 4");

  const FbmSampler sampler(cfg.hurst, cfg.level, cfg.horizon, cfg.policy);
  StudyReport rep;
  rep.kind = "stationarity";
  rep.params = {{"hurst", cfg.hurst},
                {"level", cfg.level},
                {"horizon", cfg.horizon},
                {"seed", cfg.seed},
                {"shifts", cfg.shifts},
                {"ensemble", cfg.ensemble},
                {"i", cfg.i},
                {"j", cfg.j},
                {"k", cfg.k},
                {"window_cells", width},
                {"ensemble_shift_cells", tau_e},
                {"tolerance", cfg.tolerance},
                {"spectral_modes", cfg.spectrum.mode_count()},
                {"noise_modes", nj},
                {"kappa", cfg.spectrum.kappa()},
                {"generator", to_string(sampler.generator())}};

  // Pathwise identity on one path.
  const PathGrid path = sample_qfbm(sampler, nj, derive_seed(cfg.seed, 0));
  const auto family = dyadic_windows(cfg.level, 4);
  NormalStream picker(derive_seed(cfg.seed, 1));
  std::vector<double> worst(cfg.shifts, 0.0);
  std::vector<std::size_t> taus(cfg.shifts);
  for (auto& t : taus) t = 1 + static_cast<std::size_t>(picker.uniform() * static_cast<double>(cells - 1));
  parallel_for(cfg.shifts, cfg.threads, [&](std::size_t q) {
    const std::size_t tau = std::min(taus[q], cells - 1);
    const PathGrid shifted = shift_cells(path, tau);
    std::vector<WindowPair> local, global;
    for (const auto& w : family)
      if (w.m1 + tau <= cells) {
        local.push_back(w);
        global.push_back({w.m0 + tau, w.m1 + tau});
      }
    if (local.empty()) {
      local.push_back({0, cells - tau});
      global.push_back({tau, cells});
    }
    const auto a = scaled_tensors(shifted, cfg.spectrum, cfg.covariance, local);
    const auto b = scaled_tensors(path, cfg.spectrum, cfg.covariance, global);
    double w_max = 0.0;
    for (std::size_t w = 0; w < a.size(); ++w) {
      const auto& va = a[w].unscaled_values();
      const auto& vb = b[w].unscaled_values();
      for (std::size_t c = 0; c < va.size(); ++c)
        w_max = std::max(w_max, std::abs(va[c] - vb[c]) / (1.0 + std::abs(vb[c])));
    }
    worst[q] = w_max;
  });
  const double pathwise = cfg.shifts ? *std::max_element(worst.begin(), worst.end()) : 0.0;
  rep.extra["pathwise_max_discrepancy"] = pathwise;
  rep.checks.push_back(make_check("pathwise_discrepancy", pathwise, 0.0, cfg.tolerance,
                                  "|a(theta_tau w) - a(w + tau)| / (1 + |a|)"));

  if (cfg.ensemble > 0) {
    const double lambda = cfg.spectrum.eigenvalue(cfg.i);
    std::vector<double> x0(cfg.ensemble), xt(cfg.ensemble);
    parallel_for(cfg.ensemble, cfg.threads, [&](std::size_t q) {
      const PathGrid a = sample_qfbm(sampler, nj, derive_seed(cfg.seed, {2, q}));
      const PathGrid b = sample_qfbm(sampler, nj, derive_seed(cfg.seed, {3, q}));
      x0[q] = area_component(a, lambda, cfg.j, cfg.k, {0, width});
      xt[q] = area_component(b, lambda, cfg.j, cfg.k, {tau_e, tau_e + width});
    });
    const auto m0 = mean_estimate(x0);
    const auto mt = mean_estimate(xt);
    const double pooled = 0.5 * (m0.mean + mt.mean);
    std::vector<double> s0(x0.size()), st(xt.size());
    for (std::size_t q = 0; q < x0.size(); ++q) {
      s0[q] = (x0[q] - pooled) * (x0[q] - pooled);
      st[q] = (xt[q] - pooled) * (xt[q] - pooled);
    }
    const double ks = ks_statistic(x0, xt);
    const double crit = ks_critical_value(x0.size(), xt.size(), 0.01);
    rep.extra["mean_unshifted"] = m0.mean;
    rep.extra["mean_shifted"] = mt.mean;
    rep.extra["variance_unshifted"] = m0.variance;
    rep.extra["variance_shifted"] = mt.variance;
    rep.extra["ks_statistic"] = ks;
    rep.extra["ks_critical_1pct"] = crit;
    rep.checks.push_back(make_check("mean_z", z_two_sample(m0, mt), -3.0, 3.0));
    rep.checks.push_back(make_check("second_moment_z", z_two_sample(mean_estimate(s0), mean_estimate(st)),
                                    -3.0, 3.0));
    rep.checks.push_back(make_check("ks_statistic", ks, 0.0, crit, "two-sample, 1% critical value"));
  }
  return rep;
}

}  // namespace ouarea
