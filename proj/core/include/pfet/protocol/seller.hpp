#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pfet/he/provider.hpp"
#include "pfet/market/types.hpp"
#include "pfet/protocol/messages.hpp"

namespace pfet::protocol {

/// Largest |sum(states) - 1| accepted after decrypting refreshed states.
inline constexpr double kEncryptedDriftBound = 1e-4;

/// Encrypts prices and states at level 0 and packs them with the public and
/// evaluation keys.
Msg1 seller_init_round(const he::Provider& provider, const he::KeyMaterial& keys,
                       std::span<const double> prices, std::span<const double> states,
                       std::uint32_t iteration);

struct RoundOutcome {
  std::vector<double> demands;
  std::vector<double> new_prices;
  std::vector<double> new_states;  // empty when converged: states are not decrypted
  bool converged = false;
};

/// Decrypts demands, updates prices in plaintext and judges convergence. When
/// not converged, also decrypts the buyers' updated states so they can be
/// re-encrypted fresh next round.
RoundOutcome seller_finalize_round(const he::Provider& provider, const Msg2& msg2,
                                   const he::KeyMaterial& keys, const market::MarketParams& params,
                                   std::span<const double> supplies,
                                   std::span<const double> prices);

/// Seller side of a trading period. Owns the key material; the secret key
/// never leaves this object.
class SellerEngine {
 public:
  SellerEngine(he::Provider& provider, const market::MarketScenario& scenario);

  Msg1 open_round() const;

  /// Consumes the buyer reply, advances prices/states and returns the
  /// seller-visible part of the round.
  market::IterationReport close_round(const Msg2& msg2);

  const market::MarketState& state() const noexcept { return state_; }
  bool finished() const noexcept { return finished_; }
  const he::KeyId& key_id() const noexcept { return keys_.key_id(); }

  /// For tests that must prove the secret never reaches the wire.
  const he::SecretKey& secret_key_for_audit() const noexcept { return keys_.secret_key; }

 private:
  const he::Provider& provider_;
  market::MarketParams params_;
  std::vector<double> supplies_;
  he::KeyMaterial keys_;
  market::MarketState state_;
  bool finished_ = false;
};

}  // namespace pfet::protocol
