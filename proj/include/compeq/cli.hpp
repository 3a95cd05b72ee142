#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace compeq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. `args` excludes the program name. Results go to
// `out` as one JSON document (or CSV for `table --format csv`), diagnostics
// to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace compeq
