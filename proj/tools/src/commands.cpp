#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "config.hpp"
#include "ouarea/area.hpp"
#include "ouarea/convergence.hpp"
#include "ouarea/csv.hpp"
#include "ouarea/fbm.hpp"
#include "ouarea/frak.hpp"
#include "ouarea/lemmas.hpp"
#include "ouarea/level_one.hpp"
#include "ouarea/moments.hpp"
#include "ouarea/seeding.hpp"
#include "ouarea/stationarity.hpp"
#include "ouarea/tensor.hpp"

namespace ouarea::cli {

namespace {

template <class T>
T sec(const json& cfg, const std::string& command, const char* key) {
  try {
    return cfg.at(command).at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config " + command + "." + key + ": " + e.what());
  }
}

template <class... T>
void row(csv::RowWriter& w, const T&... v) {
  (w << ... << v);
  w.end();
}

template <class T>
T top(const json& cfg, const char* key) {
  return cfg.at(key).get<T>();
}

PathGrid sample_path(const json& cfg, RunRecorder& rec, unsigned level, std::uint64_t seed) {
  PathGrid p = sample_qfbm(covariance_from(cfg), top<double>(cfg, "hurst"), level, top<double>(cfg, "horizon"), seed,
                           policy_from(cfg));
  rec.add_generator(to_string(p.generator()));
  return p;
}

WindowPair window_of(const json& cfg, const std::string& command, const PathGrid& p) {
  const double s = sec<double>(cfg, command, "s");
  const json& t = cfg.at(command).at("t");
  const double tt = t.is_null() ? p.horizon() : t.get<double>();
  try {
    return make_window(p, s, tt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config " + command + ": " + e.what());
  }
}

void write_report(RunRecorder& rec, const StudyReport& r) {
  rec.write_file("report.json", [&](std::ostream& os) { os << to_json(r).dump(2) << '\n'; });
  if (!r.levels.empty()) rec.write_file("metrics.csv", [&](std::ostream& os) { write_metrics_csv(r, os); });
}

void note_generator(RunRecorder& rec, const StudyReport& r) {
  if (r.params.contains("generator")) rec.add_generator(r.params["generator"].get<std::string>());
}

StudyReport sample(const json& cfg, RunRecorder& rec) {
  StudyReport r;
  r.kind = "sample";
  rec.timed("sample", [&] {
    const PathGrid p = sample_path(cfg, rec, level_from(cfg), top<std::uint64_t>(cfg, "seed"));
    rec.write_file("path.csv", [&](std::ostream& os) { write_path_csv(p, os); });
    r.params = {{"level", p.level()}, {"modes", p.mode_count()}, {"generator", to_string(p.generator())}};
  });
  return r;
}

StudyReport area(const json& cfg, RunRecorder& rec) {
  StudyReport r;
  r.kind = "area";
  rec.timed("area", [&] {
    const PathGrid p = sample_path(cfg, rec, level_from(cfg), top<std::uint64_t>(cfg, "seed"));
    const WindowPair w = window_of(cfg, "area", p);
    const AreaTensor t = scaled_tensor(p, spectrum_from(cfg), covariance_from(cfg), w, top<unsigned>(cfg, "threads"));
    rec.write_file("tensor.csv", [&](std::ostream& os) { write_tensor_csv(t, os); });
    r.params = {{"level", p.level()}, {"s", t.s()}, {"t", t.t()}, {"generator", to_string(p.generator())}};
    r.extra["hs_norm"] = hs_norm(t);
  });
  return r;
}

// splitmix-style draws keyed by (seed, case, slot); independent of the
// standard library's distributions so runs match across toolchains
std::uint64_t draw(std::uint64_t seed, std::size_t c, std::uint64_t slot, std::uint64_t range) {
  return derive_seed(seed, {0xc4e7, c, slot}) % range;
}

StudyReport chen(const json& cfg, RunRecorder& rec) {
  StudyReport r;
  r.kind = "chen";
  const auto cases = sec<std::size_t>(cfg, "chen", "cases");
  const double tol = sec<double>(cfg, "chen", "tolerance");
  const std::uint64_t seed = top<std::uint64_t>(cfg, "seed");
  const unsigned level = level_from(cfg);
  const SpectrumConfig spec = spectrum_from(cfg);
  const std::size_t nj = covariance_from(cfg).mode_count();
  double worst = 0.0;
  rec.timed("chen", [&] {
    rec.write_file("chen.csv", [&](std::ostream& os) {
      csv::RowWriter out(os);
      row(out, "case", "i", "j", "k", "s", "tau", "t", "area", "residual", "scaled_residual");
      for (std::size_t c = 0; c < cases; ++c) {
        const PathGrid p = sample_path(cfg, rec, level, derive_seed(seed, {0xc4e7, c}));
        const std::uint64_t cells = p.cell_count();
        std::size_t a[3] = {draw(seed, c, 3, cells + 1), draw(seed, c, 4, cells + 1), draw(seed, c, 5, cells + 1)};
        std::sort(a, a + 3);
        const std::size_t i = draw(seed, c, 0, spec.mode_count()), j = draw(seed, c, 1, nj), k = draw(seed, c, 2, nj);
        const double lambda = spec.eigenvalue(i);
        const double whole = area_component(p, lambda, j, k, {a[0], a[2]});
        const double res = chen_residual(p, lambda, j, k, a[0], a[1], a[2]);
        const double scaled = std::abs(res) / (1.0 + std::abs(whole));
        worst = std::max(worst, scaled);
        row(out, c, i, j, k, p.time(a[0]), p.time(a[1]), p.time(a[2]), whole, res, scaled);
      }
    });
  });
  r.params = {{"level", level}, {"cases", cases}};
  r.checks.push_back(make_check("max_scaled_residual", worst, 0.0, tol, "|residual| / (1 + |a(s,t)|)"));
  return r;
}

StudyReport convergence(const json& cfg, RunRecorder& rec) {
  ConvergenceConfig c;
  c.hurst = top<double>(cfg, "hurst");
  c.beta = beta_from(cfg);
  c.levels = top<std::vector<unsigned>>(cfg, "levels");
  c.reference_level = sec<unsigned>(cfg, "convergence", "reference_level");
  c.horizon = top<double>(cfg, "horizon");
  c.spectrum = spectrum_from(cfg);
  c.covariance = covariance_from(cfg);
  c.seed = top<std::uint64_t>(cfg, "seed");
  c.seeds = sec<std::size_t>(cfg, "convergence", "seeds");
  c.window_scales = sec<unsigned>(cfg, "convergence", "window_scales");
  c.policy = policy_from(cfg);
  c.bootstrap_replicates = sec<std::size_t>(cfg, "convergence", "bootstrap_replicates");
  c.threads = top<unsigned>(cfg, "threads");
  const json& b = cfg.at("convergence").at("slope_bounds");
  if (!b.is_null()) {
    const auto v = b.get<std::vector<double>>();
    if (v.size() != 2) throw ConfigError("config convergence.slope_bounds: expected [lower, upper]");
    c.slope_bounds = std::pair{v[0], v[1]};
  }
  StudyReport r;
  rec.timed("convergence", [&] { r = convergence_study(c); });
  return r;
}

StudyReport moments(const json& cfg, RunRecorder& rec) {
  if (top<double>(cfg, "hurst") != 0.5) throw ConfigError("moments: only H = 0.5 is supported");
  MomentConfig c;
  c.horizon = top<double>(cfg, "horizon");
  c.level = level_from(cfg);
  c.reference_level = sec<unsigned>(cfg, "moments", "reference_level");
  c.difference_levels = sec<std::vector<unsigned>>(cfg, "moments", "difference_levels");
  c.i = sec<std::size_t>(cfg, "moments", "i");
  c.j = sec<std::size_t>(cfg, "moments", "j");
  c.k = sec<std::size_t>(cfg, "moments", "k");
  c.p = sec<int>(cfg, "moments", "p");
  c.width_fractions = sec<std::vector<double>>(cfg, "moments", "width_fractions");
  c.samples = sec<std::size_t>(cfg, "moments", "samples");
  c.seed = top<std::uint64_t>(cfg, "seed");
  c.spectrum = spectrum_from(cfg);
  c.covariance = covariance_from(cfg);
  c.bootstrap_replicates = sec<std::size_t>(cfg, "moments", "bootstrap_replicates");
  c.threads = top<unsigned>(cfg, "threads");
  StudyReport r;
  rec.timed("moments", [&] { r = moment_suite(c); });
  return r;
}

StudyReport stationarity(const json& cfg, RunRecorder& rec) {
  StationarityConfig c;
  c.hurst = top<double>(cfg, "hurst");
  c.level = level_from(cfg);
  c.horizon = top<double>(cfg, "horizon");
  c.spectrum = spectrum_from(cfg);
  c.covariance = covariance_from(cfg);
  c.seed = top<std::uint64_t>(cfg, "seed");
  c.shifts = sec<std::size_t>(cfg, "stationarity", "shifts");
  c.ensemble = sec<std::size_t>(cfg, "stationarity", "ensemble");
  c.i = sec<std::size_t>(cfg, "stationarity", "i");
  c.j = sec<std::size_t>(cfg, "stationarity", "j");
  c.k = sec<std::size_t>(cfg, "stationarity", "k");
  c.window_cells = sec<std::size_t>(cfg, "stationarity", "window_cells");
  c.ensemble_shift = sec<std::size_t>(cfg, "stationarity", "ensemble_shift");
  c.tolerance = sec<double>(cfg, "stationarity", "tolerance");
  c.policy = policy_from(cfg);
  c.threads = top<unsigned>(cfg, "threads");
  StudyReport r;
  rec.timed("stationarity", [&] { r = stationarity_check(c); });
  return r;
}

StudyReport bdg(const json& cfg, RunRecorder& rec) {
  BdgConfig c;
  c.p = sec<int>(cfg, "bdg", "p");
  c.horizon = top<double>(cfg, "horizon");
  c.samples = sec<std::size_t>(cfg, "bdg", "samples");
  c.level = level_from(cfg);
  c.seed = top<std::uint64_t>(cfg, "seed");
  c.zero_integrand = sec<bool>(cfg, "bdg", "zero_integrand");
  c.threads = top<unsigned>(cfg, "threads");
  StudyReport r;
  rec.timed("bdg", [&] { r = bdg_check(c); });
  return r;
}

StudyReport multinomial(const json& cfg, RunRecorder& rec) {
  const int p = sec<int>(cfg, "multinomial", "p_max"), m = sec<int>(cfg, "multinomial", "m_max");
  StudyReport r;
  rec.timed("multinomial", [&] {
    r = multinomial_bound_check(p, m);
    const auto rows = multinomial_rows(p, m);
    rec.write_file("multinomial.csv", [&](std::ostream& os) { write_multinomial_csv(rows, os); });
  });
  return r;
}

StudyReport frak_oracle(const json& cfg, RunRecorder& rec) {
  const std::string c = "frak-oracle";
  const double beta = beta_from(cfg);
  FracQuadConfig fq;
  const json& alpha = cfg.at(c).at("alpha");
  fq.alpha = alpha.is_null() ? FracQuadConfig::default_alpha(beta) : alpha.get<double>();
  fq.level = sec<unsigned>(cfg, c, "level");
  fq.points = sec<unsigned>(cfg, c, "points");
  fq.ratio = sec<double>(cfg, c, "ratio");
  fq.max_level = sec<unsigned>(cfg, c, "max_level");
  fq.tolerance = sec<double>(cfg, c, "tolerance");
  try {
    fq.validate_for(beta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config frak-oracle: ") + e.what());
  }
  const double stiff_tol = sec<double>(cfg, c, "stiff_tolerance");
  const double threshold = sec<double>(cfg, c, "stiff_threshold");
  const SpectrumConfig spec = spectrum_from(cfg);
  StudyReport r;
  r.kind = "frak-oracle";
  double worst = 0.0, worst_stiff = 0.0;
  std::size_t unconverged = 0;
  rec.timed("frak-oracle", [&] {
    const PathGrid p = sample_path(cfg, rec, level_from(cfg), top<std::uint64_t>(cfg, "seed"));
    const WindowPair w = window_of(cfg, c, p);
    const std::size_t nj = p.mode_count();
    std::vector<std::size_t> idx(spec.mode_count());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const auto res = correction_integrals(p, spec, idx, nj, w, fq, top<unsigned>(cfg, "threads"));
    rec.write_file("frak.csv", [&](std::ostream& os) {
      csv::RowWriter out(os);
      row(out, "i", "j", "k", "lambda_delta", "correction", "closed_form", "relative_error", "converged", "level");
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < nj; ++j)
          for (std::size_t k = 0; k < nj; ++k) {
            const auto& cr = res[(i * nj + j) * nj + k];
            const double closed = plain_area_component(p, j, k, w) - area_component(p, spec, i, j, k, w);
            const double err = closed == 0.0 ? std::abs(cr.value) : std::abs(cr.value - closed) / std::abs(closed);
            const double ld = spec.eigenvalue(i) * p.step();
            (ld <= threshold ? worst : worst_stiff) = std::max(ld <= threshold ? worst : worst_stiff, err);
            if (!cr.converged) ++unconverged;
            row(out, i, j, k, ld, cr.value, closed, err, cr.converged ? 1 : 0, cr.level);
          }
    });
    r.params = {{"level", p.level()}, {"alpha", fq.alpha}, {"generator", to_string(p.generator())}};
  });
  r.checks.push_back(make_check("max_relative_error", worst, 0.0, fq.tolerance, "lambda delta <= threshold"));
  r.checks.push_back(make_check("max_relative_error_stiff", worst_stiff, 0.0, stiff_tol, "lambda delta > threshold"));
  if (unconverged > 0) r.flags.push_back("quadrature-not-converged:" + std::to_string(unconverged));
  return r;
}

StudyReport level1(const json& cfg, RunRecorder& rec) {
  LevelOneConfig c;
  c.hurst = top<double>(cfg, "hurst");
  const json& betas = cfg.at("level1").at("betas");
  c.betas = betas.is_null() ? std::vector<double>{beta_from(cfg)} : betas.get<std::vector<double>>();
  c.levels = top<std::vector<unsigned>>(cfg, "levels");
  c.reference_level = sec<unsigned>(cfg, "level1", "reference_level");
  c.horizon = top<double>(cfg, "horizon");
  c.seed = top<std::uint64_t>(cfg, "seed");
  c.seeds = sec<std::size_t>(cfg, "level1", "seeds");
  c.policy = policy_from(cfg);
  c.bootstrap_replicates = sec<std::size_t>(cfg, "level1", "bootstrap_replicates");
  c.threads = top<unsigned>(cfg, "threads");
  StudyReport r;
  rec.timed("level1", [&] { r = level1_rate_study(c); });
  return r;
}

}  // namespace

StudyReport run_study(const std::string& command, const json& cfg, RunRecorder& rec) {
  StudyReport r;
  try {
    if (command == "sample") r = sample(cfg, rec);
    else if (command == "area") r = area(cfg, rec);
    else if (command == "chen") r = chen(cfg, rec);
    else if (command == "convergence") r = convergence(cfg, rec);
    else if (command == "moments") r = moments(cfg, rec);
    else if (command == "stationarity") r = stationarity(cfg, rec);
    else if (command == "bdg") r = bdg(cfg, rec);
    else if (command == "multinomial") r = multinomial(cfg, rec);
    else if (command == "frak-oracle") r = frak_oracle(cfg, rec);
    else if (command == "level1") r = level1(cfg, rec);
    else throw ConfigError("unknown subcommand '" + command + "'");
  } catch (const std::invalid_argument& e) {
    // library preconditions on user-supplied parameters
    throw ConfigError(e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(e.what());
  }
  note_generator(rec, r);
  write_report(rec, r);
  return r;
}

}  // namespace ouarea::cli
