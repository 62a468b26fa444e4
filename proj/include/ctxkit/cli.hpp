#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctxkit::cli {

inline constexpr int kExitFeasible = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitIndeterminate = 2;
inline constexpr int kExitUsage = 3;
inline constexpr int kExitInternal = 4;

inline constexpr const char* kVersion = "1.0.0";

// Runs one invocation; args excludes the program name. Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctxkit::cli
