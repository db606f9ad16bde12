#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "manifest.hpp"
#include "ouarea/report.hpp"

namespace ouarea::cli {

/// Runs a study subcommand on a resolved config; writes its outputs through
/// `rec` and returns the report whose checks decide the exit code.
StudyReport run_study(const std::string& command, const nlohmann::json& cfg, RunRecorder& rec);

}  // namespace ouarea::cli
