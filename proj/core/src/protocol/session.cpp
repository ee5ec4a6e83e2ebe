#include "pfet/protocol/session.hpp"

namespace pfet::protocol {

ProtocolSession::ProtocolSession(const market::MarketScenario& scenario, he::Provider& provider)
    : provider_(provider),
      seller_(provider, scenario),
      buyers_(scenario.buyers, scenario.params.eta2) {}

market::IterationReport ProtocolSession::step() {
  const Msg1 outbound = seller_.open_round();
  he::Bytes wire1 = serialize(outbound);
  const Msg1 received = parse_msg1(wire1);
  transcript_.record(Direction::kSellerToBuyer, outbound.iteration, std::move(wire1));

  const Msg2 reply = buyers_.respond(provider_, received);
  he::Bytes wire2 = serialize(reply);
  const Msg2 returned = parse_msg2(wire2);
  transcript_.record(Direction::kBuyerToSeller, reply.iteration, std::move(wire2));

  return seller_.close_round(returned);
}

ProtocolRun run_protocol(const market::MarketScenario& scenario, he::Provider& provider) {
  market::require_valid(scenario);
  ProtocolSession session(scenario, provider);
  ProtocolRun run;
  for (int t = 0; t < scenario.params.max_iters && !session.finished(); ++t) {
    run.trace.iterations.push_back(session.step());
  }
  run.trace.status =
      session.finished() ? market::RunStatus::kConverged : market::RunStatus::kNonConvergence;
  run.trace.final_state = session.state();
  run.transcript = session.transcript();
  return run;
}

}  // namespace pfet::protocol
