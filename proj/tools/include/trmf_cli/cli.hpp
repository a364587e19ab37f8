#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trmf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

/// Entry point for `trmf <subcommand> ...`; args excludes the program name.
/// Subcommands: synth, fit, forecast, impute, eval, bench.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trmf::cli
