#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <sys/wait.h>

#include "config.hpp"
#include "manifest.hpp"
#include "ouarea_cli/cli.hpp"

namespace fs = std::filesystem;
using namespace ouarea::cli;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ouarea_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json manifest(const fs::path& dir) { return json::parse(slurp(dir / "run_manifest.json")); }

fs::path write_json(const fs::path& p, const json& j) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << j.dump(2);
  return p;
}

}  // namespace

TEST_CASE("level and mode lists", "[cli][config]") {
  CHECK(parse_levels("4..9") == std::vector<unsigned>{4, 5, 6, 7, 8, 9});
  CHECK(parse_levels("4,6,8") == std::vector<unsigned>{4, 6, 8});
  CHECK(parse_levels("8") == std::vector<unsigned>{8});
  CHECK(parse_modes("16,4") == std::pair<std::size_t, std::size_t>{16, 4});
  CHECK_THROWS_AS(parse_levels("9..4"), ConfigError);
  CHECK_THROWS_AS(parse_levels("x"), ConfigError);
  CHECK_THROWS_AS(parse_modes("16"), ConfigError);
}

TEST_CASE("resolved config carries defaults and overrides", "[cli][config]") {
  Overrides ov;
  ov.hurst = 0.4;
  ov.levels = std::vector<unsigned>{5, 6};
  const json r = resolve_config("convergence", json(), ov);
  CHECK(r.at("schema_version") == schema_version);
  CHECK(r.at("hurst") == 0.4);
  CHECK(r.at("levels") == json{5, 6});
  CHECK(r.at("seed") == 1234);
  CHECK(r.contains("convergence"));
  CHECK_THROWS_AS(resolve_config("convergence", json{{"schema_version", 1}, {"bogus", 1}}, {}), ConfigError);
  CHECK_THROWS_AS(resolve_config("convergence", json{{"schema_version", 1}, {"hurst", "half"}}, {}), ConfigError);
  CHECK_THROWS_AS(resolve_config("convergence", json{{"schema_version", 7}}, {}), ConfigError);
  CHECK_THROWS_AS(resolve_config("convergence", json::object(), {}), ConfigError);
}

TEST_CASE("multinomial bound row", "[cli]") {
  const fs::path out = scratch("multinomial");
  const fs::path cfg = write_json(out / "in" / "cfg.json",
                                  {{"schema_version", 1}, {"multinomial", {{"p_max", 2}, {"m_max", 2}}}});
  REQUIRE(run({"multinomial", "--config", cfg.string(), "--out", (out / "run").string(), "--quiet"}) == exit_ok);
  const std::string csv = slurp(out / "run" / "multinomial.csv");
  CHECK(csv.find("2,2,8,96,pass") != std::string::npos);
  const json m = manifest(out / "run");
  CHECK(m.at("command") == "multinomial");
  CHECK(m.at("exit_code") == 0);
  CHECK(m.at("summary").at("passed") == true);
  bool hashed = false;
  for (const auto& f : m.at("files"))
    if (f.at("path") == "multinomial.csv") hashed = f.at("sha256") == sha256_hex(out / "run" / "multinomial.csv");
  CHECK(hashed);
}

TEST_CASE("area on a degenerate window is zero", "[cli]") {
  const fs::path out = scratch("area");
  const fs::path cfg = write_json(out / "in" / "cfg.json",
                                  {{"schema_version", 1}, {"area", {{"s", 0.25}, {"t", 0.25}}}});
  REQUIRE(run({"area", "--config", cfg.string(), "--out", out.string(), "--levels", "5", "--modes", "3,2",
               "--quiet"}) == exit_ok);
  std::istringstream csv(slurp(out / "tensor.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "i,j,k,s,t,unscaled,scaled");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.substr(line.size() - 4) == ",0,0");
  }
  CHECK(rows == 3 * 2 * 2);
  CHECK(manifest(out).at("summary").at("extra").at("hs_norm") == 0.0);
}

TEST_CASE("same config reproduces identical outputs", "[cli][determinism]") {
  const fs::path a = scratch("det_a"), b = scratch("det_b"), c = scratch("det_c");
  const std::vector<std::string> common = {"--levels", "6", "--modes", "4,2", "--quiet"};
  auto args = [&](const fs::path& out, std::vector<std::string> extra, const std::string& seed = "99") {
    std::vector<std::string> v = {"sample", "--out", out.string(), "--seed", seed};
    v.insert(v.end(), common.begin(), common.end());
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
  };
  REQUIRE(run(args(a, {})) == exit_ok);
  REQUIRE(run(args(b, {"--threads", "3"})) == exit_ok);
  CHECK(sha256_hex(a / "path.csv") == sha256_hex(b / "path.csv"));

  // Replaying the manifest reproduces the run.
  REQUIRE(run({"sample", "--config", (a / "run_manifest.json").string(), "--out", c.string(), "--quiet"}) ==
          exit_ok);
  CHECK(slurp(a / "path.csv") == slurp(c / "path.csv"));
  json ca = manifest(a).at("config"), cc = manifest(c).at("config");
  ca.erase("out");
  cc.erase("out");
  CHECK(ca == cc);

  REQUIRE(run(args(c, {}, "100")) == exit_ok);
  CHECK(slurp(a / "path.csv") != slurp(c / "path.csv"));
}

TEST_CASE("usage and config errors exit 1", "[cli][errors]") {
  const fs::path out = scratch("errors");
  CHECK(run({}) == exit_usage);
  CHECK(run({"no-such-command"}) == exit_usage);
  CHECK(run({"sample", "--hurst"}) == exit_usage);
  CHECK(run({"--help"}) == exit_ok);
  const fs::path bad = write_json(out / "bad.json", {{"schema_version", 1}, {"unknown_key", 3}});
  CHECK(run({"sample", "--config", bad.string(), "--out", out.string(), "--quiet"}) == exit_usage);
  CHECK(run({"sample", "--config", (out / "missing.json").string(), "--quiet"}) == exit_usage);
  CHECK(run({"sample", "--hurst", "1.5", "--out", out.string(), "--quiet"}) == exit_usage);

  // A manifest replays only under the command that produced it.
  const fs::path ok = scratch("errors_ok");
  REQUIRE(run({"multinomial", "--out", ok.string(), "--quiet"}) == exit_ok);
  CHECK(run({"sample", "--config", (ok / "run_manifest.json").string(), "--quiet"}) == exit_usage);
}

TEST_CASE("failed assertions exit 2 and still write the manifest", "[cli][errors]") {
  const fs::path out = scratch("assert");
  // A tolerance no computation can meet.
  const fs::path cfg = write_json(out / "in" / "cfg.json",
                                  {{"schema_version", 1}, {"chen", {{"cases", 5}, {"tolerance", 1e-30}}}});
  const int code = run({"chen", "--config", cfg.string(), "--out", (out / "run").string(), "--levels", "5",
                        "--quiet"});
  CHECK(code == exit_assertion);
  const json m = manifest(out / "run");
  CHECK(m.at("exit_code") == exit_assertion);
  CHECK(m.at("summary").at("passed") == false);
}

TEST_CASE("report merges manifests", "[cli][report]") {
  const fs::path a = scratch("rep_a"), b = scratch("rep_b"), r = scratch("rep_r");
  REQUIRE(run({"multinomial", "--out", a.string(), "--quiet"}) == exit_ok);
  REQUIRE(run({"sample", "--out", b.string(), "--levels", "4", "--quiet"}) == exit_ok);
  REQUIRE(run({"report", (a / "run_manifest.json").string(), (b / "run_manifest.json").string(), "--out",
               r.string(), "--quiet"}) == exit_ok);
  const json merged = json::parse(slurp(r / "merged_report.json"));
  CHECK(merged.at("passed") == true);
  CHECK(merged.at("runs").size() == 2);
  CHECK(manifest(r).at("command") == "report");
  CHECK(run({"report", (r / "nope.json").string(), "--quiet"}) == exit_usage);
}

#ifdef OUAREA_CLI_PATH
TEST_CASE("installed executable honours exit codes", "[cli][exe]") {
  const fs::path out = scratch("exe");
  const std::string exe = OUAREA_CLI_PATH;
  CHECK(std::system((exe + " multinomial --quiet --out " + out.string()).c_str()) == 0);
  CHECK(fs::exists(out / "multinomial.csv"));
  const int bad = std::system((exe + " sample --levels oops --quiet 2>/dev/null").c_str());
  CHECK(WEXITSTATUS(bad) == exit_usage);
}
#endif
