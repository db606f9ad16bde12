#include "ouarea/report.hpp"

#include <cmath>
#include <ostream>

#include "ouarea/csv.hpp"

namespace ouarea {

namespace {

// JSON has no infinities; open bounds are written as null.
nlohmann::json bound_json(double v) {
  if (std::isinf(v) || std::isnan(v)) return nullptr;
  return v;
}

double bound_from(const nlohmann::json& j, double open) {
  return j.is_null() ? open : j.get<double>();
}

nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double number_from(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

Check make_check(std::string name, double observed, double lower, double upper,
                 std::string note) {
  Check c{std::move(name), observed, lower, upper, false, std::move(note)};
  c.pass = lower <= observed && observed <= upper;
  return c;
}

bool StudyReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const Check* StudyReport::find_check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const Fit* StudyReport::find_fit(const std::string& name) const {
  for (const auto& f : fits)
    if (f.name == name) return &f;
  return nullptr;
}

nlohmann::json to_json(const StudyReport& report) {
  nlohmann::json j;
  j["kind"] = report.kind;
  j["params"] = report.params;
  j["levels"] = nlohmann::json::array();
  for (const auto& l : report.levels) {
    nlohmann::json v = nlohmann::json::object();
    for (const auto& [k, x] : l.values) v[k] = number_json(x);
    j["levels"].push_back({{"level", l.level}, {"step", l.step}, {"values", v}});
  }
  j["fits"] = nlohmann::json::array();
  for (const auto& f : report.fits) {
    j["fits"].push_back({{"name", f.name},
                         {"slope", number_json(f.slope)},
                         {"intercept", number_json(f.intercept)},
                         {"ci_lower", number_json(f.interval.lower)},
                         {"ci_upper", number_json(f.interval.upper)},
                         {"ci_level", f.interval.level},
                         {"method", f.method},
                         {"level_min", f.level_min},
                         {"level_max", f.level_max},
                         {"seeds", f.seeds}});
  }
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"observed", number_json(c.observed)},
                           {"lower", bound_json(c.lower)},
                           {"upper", bound_json(c.upper)},
                           {"pass", c.pass},
                           {"note", c.note}});
  }
  j["flags"] = report.flags;
  j["extra"] = report.extra;
  j["passed"] = report.passed();
  return j;
}

StudyReport report_from_json(const nlohmann::json& j) {
  StudyReport r;
  r.kind = j.at("kind").get<std::string>();
  r.params = j.value("params", nlohmann::json::object());
  for (const auto& l : j.at("levels")) {
    LevelMetrics m;
    m.level = l.at("level").get<unsigned>();
    m.step = l.at("step").get<double>();
    for (const auto& [k, v] : l.at("values").items()) m.values[k] = number_from(v);
    r.levels.push_back(std::move(m));
  }
  for (const auto& f : j.at("fits")) {
    Fit x;
    x.name = f.at("name").get<std::string>();
    x.slope = number_from(f.at("slope"));
    x.intercept = number_from(f.at("intercept"));
    x.interval = {number_from(f.at("ci_lower")), number_from(f.at("ci_upper")),
                  f.at("ci_level").get<double>()};
    x.method = f.at("method").get<std::string>();
    x.level_min = f.at("level_min").get<unsigned>();
    x.level_max = f.at("level_max").get<unsigned>();
    x.seeds = f.at("seeds").get<std::size_t>();
    r.fits.push_back(std::move(x));
  }
  for (const auto& c : j.at("checks")) {
    Check x;
    x.name = c.at("name").get<std::string>();
    x.observed = number_from(c.at("observed"));
    x.lower = bound_from(c.at("lower"), -unbounded);
    x.upper = bound_from(c.at("upper"), unbounded);
    x.pass = c.at("pass").get<bool>();
    x.note = c.value("note", "");
    r.checks.push_back(std::move(x));
  }
  r.flags = j.value("flags", std::vector<std::string>{});
  r.extra = j.value("extra", nlohmann::json::object());
  return r;
}

bool recheck(const StudyReport& report) {
  for (const auto& c : report.checks) {
    const bool pass = c.lower <= c.observed && c.observed <= c.upper;
    if (pass != c.pass) return false;
  }
  return true;
}

void write_metrics_csv(const StudyReport& report, std::ostream& os) {
  os << "level,step,metric,value\n";
  csv::RowWriter row(os);
  for (const auto& l : report.levels)
    for (const auto& [k, v] : l.values) {
      row << l.level << l.step << k << v;
      row.end();
    }
}

nlohmann::json constants_table() {
  return {
      {"ito_correction", "ito = stratonovich - delta_jk (t - s) / 2"},
      {"fractional_sign_factors", "unit; correction integral uses inner function -G"},
      {"phi_series_cutoff", 0.1},
      {"chen_tolerance", 1e-10},
      {"recursion_vs_naive_tolerance", 1e-12},
      {"integration_by_parts_tolerance", 1e-10},
      {"frak_oracle_tolerance", 1e-3},
      {"frak_oracle_tolerance_stiff", 1e-2},
      {"stationarity_tolerance", 1e-12},
      {"mc_standard_errors", 3.0},
      {"ks_alpha", 0.01},
      {"holder_exhaustive_points", 4097},
      {"brownian_area_slope", {0.35, 0.65}},
      {"moment_exponent_tolerance", 0.3},
      {"confidence_level", 0.95},
      {"beta_offset", 0.05},
      {"alpha_gamma", 0.9},
  };
}

}  // namespace ouarea
