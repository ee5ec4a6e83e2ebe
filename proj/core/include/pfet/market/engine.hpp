#pragma once

#include <utility>

#include "pfet/market/types.hpp"

namespace pfet::market {

/// Largest |sum(states) - 1| tolerated before SimplexDriftError.
inline constexpr double kPlaintextDriftBound = 1e-6;

/// Prices at their initial values, states uniform at 1/N_S.
MarketState initial_state(const MarketScenario& scenario);

/// One do-while round: buyers respond to the posted prices, states and
/// prices update, and convergence is judged on this round's demands.
std::pair<MarketState, IterationReport> run_iteration(const MarketState& state,
                                                      const MarketScenario& scenario);

/// Iterates until converged or params.max_iters rounds. A run that hits the
/// cap returns its trace with RunStatus::kNonConvergence.
RunTrace run_to_equilibrium(const MarketScenario& scenario);

}  // namespace pfet::market
