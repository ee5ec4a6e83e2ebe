#pragma once

#include "pfet/he/provider.hpp"
#include "pfet/market/types.hpp"
#include "pfet/protocol/buyer.hpp"
#include "pfet/protocol/seller.hpp"
#include "pfet/protocol/transcript.hpp"

namespace pfet::protocol {

/// One trading period of the encrypted protocol. Each step serializes Msg1,
/// hands the bytes to the buyer side, serializes Msg2 back, and records both
/// in the transcript; the engines share nothing but those bytes.
class ProtocolSession {
 public:
  ProtocolSession(const market::MarketScenario& scenario, he::Provider& provider);

  market::IterationReport step();

  bool finished() const noexcept { return seller_.finished(); }
  const market::MarketState& state() const noexcept { return seller_.state(); }
  const Transcript& transcript() const noexcept { return transcript_; }
  const SellerEngine& seller() const noexcept { return seller_; }

 private:
  he::Provider& provider_;
  SellerEngine seller_;
  BuyerSide buyers_;
  Transcript transcript_;
};

struct ProtocolRun {
  market::RunTrace trace;
  Transcript transcript;
};

/// Runs rounds until the sellers see convergence or max_iters is reached.
/// The RunTrace has the same shape as market::run_to_equilibrium's.
ProtocolRun run_protocol(const market::MarketScenario& scenario, he::Provider& provider);

}  // namespace pfet::protocol
