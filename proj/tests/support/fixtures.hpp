#pragma once

#include <string>
#include <vector>

#include "pfet/market/types.hpp"

namespace pfet::testing {

inline const std::vector<double> kFig3Supplies = {12, 19, 20, 20, 20, 11, 19, 20, 16, 17};
inline const std::vector<double> kFig3Prices = {9, 17, 14, 19, 6, 8, 14, 17, 20, 11};

/// Reference market: ten sellers, ten identical buyers
/// (lambda 20.1, theta 0.5), rho in [4, 20], eta1 0.15, eta2 1e-4, eps 0.01.
inline market::MarketScenario fig3_scenario() {
  market::MarketScenario s;
  s.params.rho_sell = 4.0;
  s.params.rho_buy = 20.0;
  s.params.eta1 = 0.15;
  s.params.eta2 = 1e-4;
  s.params.epsilon = 0.01;
  s.params.max_iters = 10000;
  for (std::size_t j = 0; j < kFig3Supplies.size(); ++j) {
    s.sellers.push_back({"s" + std::to_string(j + 1), kFig3Supplies[j], kFig3Prices[j]});
  }
  for (int i = 0; i < 10; ++i) s.buyers.push_back({"b" + std::to_string(i + 1), 20.1, 0.5});
  return s;
}

inline market::MarketScenario with_uniform_price(market::MarketScenario s, double price) {
  for (auto& seller : s.sellers) seller.initial_price = price;
  return s;
}

}  // namespace pfet::testing
