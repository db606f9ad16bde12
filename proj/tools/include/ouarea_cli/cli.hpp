#pragma once

#include <string>
#include <vector>

namespace ouarea::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_assertion = 2;

/// Runs one subcommand; `args` excludes the program name. Returns 0 when
/// every declared assertion passes, 2 when one fails, 1 on usage or config
/// errors. The run manifest is written whenever the subcommand started.
int run(const std::vector<std::string>& args);

int main(int argc, char** argv);

}  // namespace ouarea::cli
