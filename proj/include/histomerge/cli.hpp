#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace histomerge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kEvaluateCsvHeader =
    "method,t,beta,days,mu_b,mu_s,bound,bound_ok,runtime_ms";

/// Runs one `histomerge` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 on a runtime failure, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace histomerge::cli
