#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "scalefield/error.hpp"
#include "scalefield/scenario.hpp"

namespace scalefield {

inline constexpr int kExitOk = 0;
inline constexpr int kExitTaskFailure = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitValidationError = 3;

/// 2 for kParseError, 3 for kValidationError, 1 for everything else.
int ExitCodeFor(ErrorCode code);

struct RunOptions {
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;  // overrides the scenario seed
  bool verbose = false;
};

struct RunResult {
  int exit_code = kExitOk;
  std::filesystem::path output_dir;
  Json summary;
};

/// --out, then $SCALEFIELD_OUT, then the scenario's "output" (relative to the
/// scenario file), then ./scalefield-out.
std::filesystem::path ResolveOutputDir(const RunOptions& options, const Scenario& scenario,
                                       const std::filesystem::path& scenario_file);

/// Runs every task in order, writing one CSV per task and summary.json.
/// Parse and validation problems propagate as Error before anything is written.
RunResult RunScenario(const std::filesystem::path& scenario_file, const RunOptions& options,
                      std::ostream* log = nullptr);

RunResult RunParsedScenario(const Scenario& scenario, const std::filesystem::path& output_dir,
                            std::optional<std::uint64_t> seed, std::ostream* log = nullptr);

}  // namespace scalefield
