#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace enantiosim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Figure ids accepted by `reproduce`.
const std::vector<std::string>& figure_ids();

/// Names accepted by `export-preset`.
const std::vector<std::string>& preset_names();

/// Entry point of the `enantiosim` tool. Returns the process exit code:
/// 0 success, 2 configuration or usage error, 3 numerical diagnostic failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace enantiosim
