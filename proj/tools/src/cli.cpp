#include "ouarea_cli/cli.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>

#include "commands.hpp"
#include "config.hpp"
#include "manifest.hpp"

namespace ouarea::cli {

namespace {

struct Options {
  std::string config;
  std::uint64_t seed = 0;
  double hurst = 0.0, kappa = 0.0, beta = 0.0;
  std::string levels, modes, out;
  unsigned threads = 1;
  bool quiet = false;
  bool json_logs = false;
  std::vector<std::string> manifests;
};

class Log {
 public:
  Log(bool quiet, bool json) : json_(json), logger_("ouarea", std::make_shared<spdlog::sinks::stderr_sink_mt>()) {
    logger_.set_level(quiet ? spdlog::level::warn : spdlog::level::info);
    if (json)
      logger_.set_pattern(R"({"time":"%Y-%m-%dT%H:%M:%S.%e","level":"%l","msg":%v})");
    else
      logger_.set_pattern("[%H:%M:%S] %^%l%$ %v");
  }
  void info(const std::string& m) { logger_.info(text(m)); }
  void warn(const std::string& m) { logger_.warn(text(m)); }
  void error(const std::string& m) { logger_.error(text(m)); }

 private:
  std::string text(const std::string& m) const { return json_ ? json(m).dump() : m; }
  bool json_;
  spdlog::logger logger_;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON config file, or a run manifest to repeat");
  sub->add_option("--seed", o.seed, "root seed");
  sub->add_option("--hurst", o.hurst, "Hurst parameter H");
  sub->add_option("--levels", o.levels, "dyadic levels: 4..9, 4,6,8 or 8");
  sub->add_option("--modes", o.modes, "spectral and noise modes I,J");
  sub->add_option("--kappa", o.kappa, "smoothness index kappa");
  sub->add_option("--beta", o.beta, "Hoelder exponent beta (default H - 0.05)");
  sub->add_option("--out", o.out, "output directory (default $OUAREA_OUT_DIR or ./ouarea-out)");
  sub->add_option("--threads", o.threads, "worker cap; results do not depend on it")->check(CLI::PositiveNumber);
  sub->add_flag("--quiet", o.quiet, "warnings and errors only");
  sub->add_flag("--json-logs", o.json_logs, "one JSON object per log line");
}

const char* description(const std::string& c) {
  if (c == "sample") return "sample a Q-fBm path and write path.csv";
  if (c == "area") return "write the scaled area tensor of one window (tensor.csv)";
  if (c == "chen") return "Chen residuals on random windows (chen.csv)";
  if (c == "convergence") return "Wong-Zakai convergence study";
  if (c == "moments") return "Monte Carlo moments of Brownian areas";
  if (c == "stationarity") return "shift identity and ensemble comparison";
  if (c == "bdg") return "Burkholder-Davis-Gundy check with analytic right side";
  if (c == "multinomial") return "even multinomial bound in exact arithmetic";
  if (c == "frak-oracle") return "fractional-derivative correction integral against the closed form";
  if (c == "level1") return "decay of the level-1 approximation error";
  return "";
}

json summary_of(const StudyReport& r) {
  const json j = to_json(r);
  return {{"kind", r.kind}, {"passed", r.passed()}, {"checks", j.at("checks")}, {"flags", r.flags}, {"extra", r.extra}};
}

int run_report(const Options& o, Log& log) {
  json runs = json::array();
  bool all = true;
  for (const auto& path : o.manifests) {
    std::ifstream in(path);
    if (!in) {
      log.error("cannot open manifest " + path);
      return exit_usage;
    }
    json m;
    try {
      m = json::parse(in);
    } catch (const json::parse_error& e) {
      log.error("manifest " + path + " is not valid JSON");
      return exit_usage;
    }
    if (!m.contains("manifest_version") || !m.contains("summary")) {
      log.error(path + " is not a run manifest");
      return exit_usage;
    }
    const bool passed = m["summary"].value("passed", false);
    all = all && passed;
    runs.push_back({{"manifest", path},
                    {"command", m.value("command", "")},
                    {"passed", passed},
                    {"exit_code", m.value("exit_code", -1)},
                    {"checks", m["summary"].value("checks", json::array())},
                    {"files", m.value("files", json::array())}});
  }
  json resolved = {{"out", o.out.empty() ? json(nullptr) : json(o.out)}, {"inputs", o.manifests}};
  RunRecorder rec(output_directory(resolved));
  rec.write_file("merged_report.json", [&](std::ostream& os) {
    os << json{{"runs", runs}, {"passed", all}}.dump(2) << '\n';
  });
  const int code = all ? exit_ok : exit_assertion;
  rec.write_manifest("report", resolved, {{"passed", all}, {"runs", runs.size()}}, code);
  log.info("merged " + std::to_string(runs.size()) + " manifests: " + (all ? "all passed" : "failures present"));
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"ouarea: semigroup-convolved rough-path areas of Q-fractional Brownian motion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", OUAREA_VERSION);
  Options o;
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const auto& c : study_commands()) {
    CLI::App* sub = app.add_subcommand(c, description(c));
    add_common(sub, o);
    subs.emplace_back(c, sub);
  }
  CLI::App* report = app.add_subcommand("report", "merge run manifests into merged_report.json");
  report->add_option("manifests", o.manifests, "run_manifest.json files")->required();
  report->add_option("--out", o.out, "output directory");
  report->add_flag("--quiet", o.quiet, "warnings and errors only");
  report->add_flag("--json-logs", o.json_logs, "one JSON object per log line");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  Log log(o.quiet, o.json_logs);
  if (report->parsed()) return run_report(o, log);

  std::string command;
  CLI::App* sub = nullptr;
  for (const auto& [name, s] : subs)
    if (s->parsed()) {
      command = name;
      sub = s;
    }

  json resolved;
  try {
    json file;
    if (!o.config.empty()) {
      std::string from;
      file = load_config_file(o.config, &from);
      if (!from.empty() && from != command)
        throw ConfigError("manifest was produced by '" + from + "', not '" + command + "'");
    }
    Overrides ov;
    if (sub->count("--seed")) ov.seed = o.seed;
    if (sub->count("--hurst")) ov.hurst = o.hurst;
    if (sub->count("--levels")) ov.levels = parse_levels(o.levels);
    if (sub->count("--modes")) ov.modes = parse_modes(o.modes);
    if (sub->count("--kappa")) ov.kappa = o.kappa;
    if (sub->count("--beta")) ov.beta = o.beta;
    if (sub->count("--out")) ov.out = o.out;
    if (sub->count("--threads")) ov.threads = o.threads;
    resolved = resolve_config(command, file, ov);
  } catch (const ConfigError& e) {
    log.error(e.what());
    return exit_usage;
  }

  const std::string dir = output_directory(resolved);
  std::unique_ptr<RunRecorder> rec;
  try {
    rec = std::make_unique<RunRecorder>(dir);
  } catch (const std::exception& e) {
    log.error(std::string("cannot create output directory: ") + e.what());
    return exit_usage;
  }
  log.info(command + ": writing to " + dir);
  try {
    const StudyReport r = run_study(command, resolved, *rec);
    const int code = r.passed() ? exit_ok : exit_assertion;
    for (const auto& c : r.checks)
      (c.pass ? static_cast<void>(log.info(c.name + " = " + json(c.observed).dump() + " pass"))
              : log.warn(c.name + " = " + json(c.observed).dump() + " FAIL"));
    for (const auto& f : r.flags) log.warn("flag: " + f);
    rec->write_manifest(command, resolved, summary_of(r), code);
    return code;
  } catch (const ConfigError& e) {
    log.error(e.what());
    rec->write_manifest(command, resolved, {{"passed", false}, {"error", e.what()}}, exit_usage);
    return exit_usage;
  } catch (const std::exception& e) {
    log.error(e.what());
    rec->write_manifest(command, resolved, {{"passed", false}, {"error", e.what()}}, exit_usage);
    return exit_usage;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int q = 1; q < argc; ++q) args.emplace_back(argv[q]);
  return run(args);
}

}  // namespace ouarea::cli
