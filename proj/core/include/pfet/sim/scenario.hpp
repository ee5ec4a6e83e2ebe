#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pfet/he/provider.hpp"
#include "pfet/market/types.hpp"

namespace pfet::sim {

enum class Mode { kPlaintext, kEncrypted };

std::string_view to_string(Mode mode);
/// Throws InputError on anything but "plaintext" or "encrypted".
Mode parse_mode(std::string_view text);

struct ScenarioFile {
  market::MarketScenario market;
  Mode mode = Mode::kPlaintext;
  he::SchemeParams scheme;
};

/// Parses the YAML scenario format:
///
///   mode: plaintext            # or encrypted
///   params:
///     rho_sell: 4              # cent/kWh
///     rho_buy: 20
///     eta1: 0.15
///     eta2: 0.0001
///     epsilon: 0.01            # kW, optional (default 0.01)
///     max_iters: 10000         # optional
///     lambda_max: 25           # optional
///   scheme:                    # optional
///     scale_bits: 20
///     depth_budget: 7
///   sellers:
///     - {id: s1, supply: 12, initial_price: 9}
///   buyers:
///     - {id: b1, lambda: 20.1, theta: 0.5}
///
/// Syntax problems and ill-typed values raise ParseError with the line;
/// invariant violations and unknown keys raise one ValidationError listing
/// every offending field path.
ScenarioFile parse_scenario(std::string_view text, const std::string& origin = "<string>");
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Every violation of the scenario and scheme invariants.
std::vector<Violation> validate(const ScenarioFile& file);

}  // namespace pfet::sim
