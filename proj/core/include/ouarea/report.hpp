#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "ouarea/statistics.hpp"

namespace ouarea {

inline constexpr double unbounded = std::numeric_limits<double>::infinity();

/// One declared assertion: pass iff lower <= observed <= upper.
struct Check {
  std::string name;
  double observed = 0.0;
  double lower = -unbounded;
  double upper = unbounded;
  bool pass = false;
  std::string note;
};

Check make_check(std::string name, double observed, double lower, double upper,
                 std::string note = {});

struct Fit {
  std::string name;
  double slope = 0.0;
  double intercept = 0.0;
  Interval interval;
  std::string method;  // "bootstrap-seeds", "student-t-seeds", ...
  unsigned level_min = 0;
  unsigned level_max = 0;
  std::size_t seeds = 0;
};

struct LevelMetrics {
  unsigned level = 0;
  double step = 0.0;
  std::map<std::string, double> values;
};

struct StudyReport {
  std::string kind;
  nlohmann::json params = nlohmann::json::object();
  std::vector<LevelMetrics> levels;
  std::vector<Fit> fits;
  std::vector<Check> checks;
  std::vector<std::string> flags;
  nlohmann::json extra = nlohmann::json::object();

  bool passed() const;
  const Check* find_check(const std::string& name) const;
  const Fit* find_fit(const std::string& name) const;
};

nlohmann::json to_json(const StudyReport& report);
StudyReport report_from_json(const nlohmann::json& j);

/// Recomputes every check's pass flag from its recorded numbers; true iff all
/// agree with the stored flags.
bool recheck(const StudyReport& report);

/// Long-format metrics: `level,step,metric,value`.
void write_metrics_csv(const StudyReport& report, std::ostream& os);

/// Sign conventions and tolerances shared by all studies.
nlohmann::json constants_table();

}  // namespace ouarea
