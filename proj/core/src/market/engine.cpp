#include "pfet/market/engine.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "pfet/market/game.hpp"

namespace pfet::market {

MarketState initial_state(const MarketScenario& scenario) {
  const std::size_t n = scenario.num_sellers();
  MarketState state;
  state.prices = scenario.initial_prices();
  state.states.assign(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  state.iteration = 0;
  return state;
}

std::pair<MarketState, IterationReport> run_iteration(const MarketState& state,
                                                      const MarketScenario& scenario) {
  const std::size_t num_sellers = scenario.num_sellers();
  const std::size_t num_buyers = scenario.num_buyers();
  if (state.prices.size() != num_sellers || state.states.size() != num_sellers) {
    throw InputError("run_iteration: state does not match scenario dimensions");
  }

  IterationReport report;
  report.iteration = state.iteration + 1;
  report.prices = state.prices;
  report.states = state.states;
  report.purchases = Matrix(num_sellers, num_buyers);
  report.welfares.resize(num_sellers);
  report.demands.resize(num_sellers);

  for (std::size_t j = 0; j < num_sellers; ++j) {
    auto row = report.purchases.row(j);
    for (std::size_t i = 0; i < num_buyers; ++i) {
      const double raw = raw_best_response(state.prices[j], scenario.buyers[i]);
      if (raw < 0.0) ++report.clamped_purchases;
      row[i] = raw < 0.0 ? 0.0 : raw;
      ++report.best_response_evaluations;
    }
    report.welfares[j] = seller_welfare(row, scenario.buyers);
  }
  report.avg_welfare = average_welfare(report.welfares, state.states);
  for (std::size_t j = 0; j < num_sellers; ++j) {
    report.demands[j] = demand_for_seller(state.states[j], report.purchases.row(j));
  }

  const auto supplies = scenario.supplies();
  report.states_after = update_states(state.states, report.welfares, scenario.params.eta2);
  report.prices_after = update_prices(state.prices, report.demands, supplies, scenario.params);
  report.converged = max_excess(report.demands, supplies) <= scenario.params.epsilon;

  const double total = std::accumulate(report.states_after.begin(), report.states_after.end(), 0.0);
  if (std::abs(total - 1.0) > kPlaintextDriftBound) {
    std::ostringstream msg;
    msg << "state simplex drifted to sum " << total << " at iteration " << report.iteration;
    throw SimplexDriftError(msg.str());
  }

  MarketState next{report.prices_after, report.states_after, report.iteration};
  return {std::move(next), std::move(report)};
}

RunTrace run_to_equilibrium(const MarketScenario& scenario) {
  require_valid(scenario);
  RunTrace trace;
  MarketState state = initial_state(scenario);
  for (int t = 0; t < scenario.params.max_iters; ++t) {
    auto [next, report] = run_iteration(state, scenario);
    const bool converged = report.converged;
    trace.iterations.push_back(std::move(report));
    state = std::move(next);
    if (converged) {
      trace.status = RunStatus::kConverged;
      break;
    }
  }
  trace.final_state = std::move(state);
  return trace;
}

}  // namespace pfet::market
