#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

#include "pfet/market/types.hpp"
#include "pfet/protocol/transcript.hpp"
#include "pfet/sim/scenario.hpp"

namespace pfet::sim {

/// Seed for the shadow backend used by the CLI; fixed so output is
/// reproducible.
inline constexpr std::uint64_t kDefaultProviderSeed = 0x5eed0ffe7ULL;

struct RunOptions {
  std::optional<Mode> mode;
  std::optional<double> epsilon;
  std::optional<int> max_iters;
};

struct RunResult {
  Mode mode = Mode::kPlaintext;
  market::RunTrace trace;
  std::optional<protocol::Transcript> transcript;  // encrypted mode only
};

/// Applies overrides and re-validates.
ScenarioFile apply_overrides(ScenarioFile scenario, const RunOptions& options);

/// Runs the scenario in its mode (plaintext engine or encrypted protocol on
/// the shadow backend).
RunResult execute(const ScenarioFile& scenario);

/// Exit status of `run`: 0 when converged, 2 on NonConvergence.
inline constexpr int kExitNonConvergence = 2;

/// Writes trace.csv and summary.csv into out_dir (created if needed) and a
/// human-readable summary to `log`.
int run_command(const ScenarioFile& scenario, const std::filesystem::path& out_dir,
                const RunOptions& options, std::ostream& log);

}  // namespace pfet::sim
