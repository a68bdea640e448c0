#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kacgap::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for `kacgap <eigen|bounds|gap|simulate|verify> [options]`.
/// Output goes to out, diagnostics and usage to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace kacgap::tools
