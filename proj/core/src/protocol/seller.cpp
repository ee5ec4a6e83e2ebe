#include "pfet/protocol/seller.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "pfet/error.hpp"
#include "pfet/market/engine.hpp"
#include "pfet/market/game.hpp"
#include "pfet/protocol/blocks.hpp"
#include "pfet/protocol/buyer.hpp"

namespace pfet::protocol {

Msg1 seller_init_round(const he::Provider& provider, const he::KeyMaterial& keys,
                       std::span<const double> prices, std::span<const double> states,
                       std::uint32_t iteration) {
  if (prices.size() != states.size()) {
    throw InputError("seller_init_round: prices and states differ in length");
  }
  Msg1 msg;
  msg.iteration = iteration;
  msg.enc_prices.reserve(prices.size());
  msg.enc_states.reserve(states.size());
  for (std::size_t j = 0; j < prices.size(); ++j) {
    const auto index = static_cast<std::uint32_t>(j);
    msg.enc_prices.push_back(provider.encrypt(keys.public_key, prices[j],
                                              encryption_salt(iteration, SaltTag::kPrice, index)));
    msg.enc_states.push_back(provider.encrypt(keys.public_key, states[j],
                                              encryption_salt(iteration, SaltTag::kState, index)));
  }
  msg.public_key = keys.public_key;
  msg.eval_key = keys.eval_key;
  return msg;
}

RoundOutcome seller_finalize_round(const he::Provider& provider, const Msg2& msg2,
                                   const he::KeyMaterial& keys, const market::MarketParams& params,
                                   std::span<const double> supplies,
                                   std::span<const double> prices) {
  if (msg2.enc_demands.size() != supplies.size() ||
      msg2.enc_states_next.size() != supplies.size()) {
    throw InputError("seller_finalize_round: Msg2 does not carry one entry per seller");
  }
  RoundOutcome out;
  in_block("block 11 (decrypt demands)", [&] {
    out.demands.reserve(supplies.size());
    for (const auto& ct : msg2.enc_demands) out.demands.push_back(provider.decrypt(keys.secret_key, ct));
  });
  out.new_prices = market::update_prices(prices, out.demands, supplies, params);
  out.converged = market::max_excess(out.demands, supplies) <= params.epsilon;
  if (!out.converged) {
    in_block("block 13 (refresh states)", [&] {
      out.new_states.reserve(supplies.size());
      for (const auto& ct : msg2.enc_states_next) {
        out.new_states.push_back(provider.decrypt(keys.secret_key, ct));
      }
    });
  }
  return out;
}

SellerEngine::SellerEngine(he::Provider& provider, const market::MarketScenario& scenario)
    : provider_(provider),
      params_(scenario.params),
      supplies_(scenario.supplies()),
      keys_(in_block("block 1 (keygen)", [&] { return provider.keygen(); })),
      state_(market::initial_state(scenario)) {}

Msg1 SellerEngine::open_round() const {
  if (finished_) throw InputError("trading period already terminated");
  return in_block("blocks 2-3 (encrypt prices and states)", [&] {
    return seller_init_round(provider_, keys_, state_.prices, state_.states,
                             static_cast<std::uint32_t>(state_.iteration + 1));
  });
}

market::IterationReport SellerEngine::close_round(const Msg2& msg2) {
  const auto expected = static_cast<std::uint32_t>(state_.iteration + 1);
  if (msg2.iteration != expected) {
    throw InputError("Msg2 for iteration " + std::to_string(msg2.iteration) + ", expected " +
                     std::to_string(expected));
  }
  RoundOutcome outcome =
      seller_finalize_round(provider_, msg2, keys_, params_, supplies_, state_.prices);

  market::IterationReport report;
  report.iteration = static_cast<int>(expected);
  report.prices = state_.prices;
  report.states = state_.states;
  report.demands = std::move(outcome.demands);
  report.prices_after = outcome.new_prices;
  report.states_after = outcome.new_states;
  report.converged = outcome.converged;

  if (!outcome.converged) {
    const double total =
        std::accumulate(outcome.new_states.begin(), outcome.new_states.end(), 0.0);
    if (std::abs(total - 1.0) > kEncryptedDriftBound) {
      std::ostringstream msg;
      msg << "refreshed states sum to " << total << " at iteration " << expected;
      throw SimplexDriftError(msg.str());
    }
    state_.states = std::move(outcome.new_states);
  }
  state_.prices = std::move(outcome.new_prices);
  state_.iteration = static_cast<int>(expected);
  finished_ = outcome.converged;
  return report;
}

}  // namespace pfet::protocol
