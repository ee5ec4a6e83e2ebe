#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pfet/error.hpp"
#include "pfet/market/game.hpp"
#include "support/oracles.hpp"

namespace pfet::market {
namespace {

using pfet::testing::grid_search;
using pfet::testing::oracle_welfare_by_utilities;

const BuyerProfile kBuyer{"b", 20.1, 0.5};

TEST(UtilityTest, ZeroConsumptionIsZero) { EXPECT_EQ(utility(0.0, 20.1, 0.5), 0.0); }

TEST(UtilityTest, HandEvaluated) {
  // 20.1 * 22.2 - 0.25 * 22.2^2 = 446.22 - 123.21
  EXPECT_NEAR(utility(22.2, 20.1, 0.5), 323.01, 1e-9);
}

TEST(UtilityTest, VertexValue) {
  for (double lambda : {20.1, 22.0, 24.9}) {
    for (double theta : {0.1, 0.5, 2.0}) {
      EXPECT_NEAR(utility(lambda / theta, lambda, theta), lambda * lambda / (2 * theta), 1e-9);
    }
  }
}

TEST(NetUtilityTest, ZeroPurchaseIsZero) {
  EXPECT_EQ(net_utility(0.0, 13.7, kBuyer), 0.0);
  EXPECT_EQ(net_utility(0.0, 4.0, {"x", 24.0, 1.7}), 0.0);
}

TEST(NetUtilityTest, MatchesClosedFormAtBestResponse) {
  EXPECT_NEAR(net_utility(22.2, 9.0, kBuyer), 123.21, 1e-9);
  EXPECT_NEAR(net_utility(22.2, 9.0, kBuyer), std::pow(20.1 - 9.0, 2) / (2 * 0.5), 1e-9);
}

TEST(NetUtilityTest, BestResponseBeatsFineGrid) {
  const double best = net_utility(best_response(9.0, kBuyer), 9.0, kBuyer);
  const auto grid = grid_search(9.0, kBuyer.lambda, kBuyer.theta, 100.0, 1e-3);
  // The grid contains the optimum itself; allow a rounding tie.
  EXPECT_GE(best, grid.best_value - 1e-12);
}

TEST(BestResponseTest, Examples) {
  EXPECT_NEAR(best_response(9.0, kBuyer), 22.2, 1e-12);
  EXPECT_NEAR(best_response(6.0, kBuyer), 28.2, 1e-12);
  EXPECT_EQ(best_response(20.1, kBuyer), 0.0);
  EXPECT_EQ(best_response(20.1, {"y", 20.1, 1.3}), 0.0);
}

TEST(BestResponseTest, NegativeRawValueClampedToZero) {
  EXPECT_LT(raw_best_response(21.0, kBuyer), 0.0);
  EXPECT_EQ(best_response(21.0, kBuyer), 0.0);
}

TEST(BestResponseTest, StrictlyDecreasingInPrice) {
  double previous = best_response(4.0, kBuyer);
  for (double price = 4.01; price <= 20.0; price += 0.01) {
    const double current = best_response(price, kBuyer);
    EXPECT_LT(current, previous) << "price " << price;
    previous = current;
  }
}

TEST(BestResponseTest, OptimalAgainstGridOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lambda_dist(20.0, 25.0);
  std::uniform_real_distribution<double> theta_dist(0.05, 2.0);
  std::uniform_real_distribution<double> price_dist(4.0, 20.0);
  for (int k = 0; k < 200; ++k) {
    const BuyerProfile b{"r", lambda_dist(rng), theta_dist(rng)};
    const double price = price_dist(rng);
    const double upper = 2.0 * (b.lambda - price) / b.theta;
    const auto grid = grid_search(price, b.lambda, b.theta, upper, 1e-3);
    const double ours = net_utility(best_response(price, b), price, b);
    EXPECT_LE(grid.best_value - ours, b.theta / 2.0 * 1e-6);
  }
}

TEST(ConcavityTest, SecondDifferenceIsMinusThetaHSquared) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x_dist(0.0, 40.0);
  std::uniform_real_distribution<double> h_dist(1e-3, 1.0);
  for (int k = 0; k < 500; ++k) {
    const BuyerProfile b{"c", 20.1 + k * 0.001, 0.1 + 0.003 * k};
    const double x = x_dist(rng);
    const double h = h_dist(rng);
    const double second = net_utility(x + h, 9.0, b) - 2 * net_utility(x, 9.0, b) +
                          net_utility(x - h, 9.0, b);
    EXPECT_NEAR(second, -b.theta * h * h, 1e-9);
  }
}

TEST(SellerWelfareTest, Examples) {
  const std::vector<BuyerProfile> two{kBuyer, kBuyer};
  EXPECT_EQ(seller_welfare(std::vector<double>{0.0, 0.0}, two), 0.0);
  EXPECT_NEAR(seller_welfare(std::vector<double>{22.2, 22.2}, two), 246.42, 1e-9);
}

TEST(SellerWelfareTest, LengthMismatchIsInputError) {
  const std::vector<BuyerProfile> two{kBuyer, kBuyer};
  EXPECT_THROW(seller_welfare(std::vector<double>{1.0}, two), InputError);
}

TEST(SellerWelfareTest, EqualsSumOfNetUtilitiesAtBestResponse) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lambda_dist(20.0, 25.0);
  std::uniform_real_distribution<double> theta_dist(0.05, 2.0);
  std::uniform_real_distribution<double> price_dist(4.0, 20.0);
  for (int k = 0; k < 200; ++k) {
    std::vector<BuyerProfile> buyers;
    std::vector<double> lambdas;
    std::vector<double> thetas;
    for (int i = 0; i < 7; ++i) {
      buyers.push_back({"b", lambda_dist(rng), theta_dist(rng)});
      lambdas.push_back(buyers.back().lambda);
      thetas.push_back(buyers.back().theta);
    }
    const double price = price_dist(rng);
    std::vector<double> purchases;
    for (const auto& b : buyers) purchases.push_back(best_response(price, b));
    const double expected = oracle_welfare_by_utilities(price, lambdas, thetas);
    EXPECT_NEAR(seller_welfare(purchases, buyers), expected, 1e-9 * std::max(1.0, expected));
  }
}

TEST(AverageWelfareTest, Examples) {
  EXPECT_NEAR(average_welfare(std::vector<double>{100, 50}, std::vector<double>{0.6, 0.4}), 80.0,
              1e-12);
  EXPECT_NEAR(average_welfare(std::vector<double>{7.5, 7.5, 7.5},
                              std::vector<double>{0.2, 0.3, 0.5}),
              7.5, 1e-12);
  EXPECT_EQ(average_welfare(std::vector<double>{0, 0}, std::vector<double>{0.9, 0.1}), 0.0);
  EXPECT_THROW(average_welfare(std::vector<double>{1}, std::vector<double>{0.5, 0.5}), InputError);
}

TEST(DemandForSellerTest, Examples) {
  EXPECT_NEAR(demand_for_seller(0.5, std::vector<double>{22.2, 22.2}), 22.2, 1e-12);
  EXPECT_EQ(demand_for_seller(0.0, std::vector<double>{3.0, 9.0}), 0.0);
  EXPECT_EQ(demand_for_seller(1.0, std::vector<double>{3.0, 9.5}), 12.5);
}

TEST(UpdateStatesTest, EqualWelfareIsFixedPoint) {
  const auto out = update_states(std::vector<double>{0.5, 0.5}, std::vector<double>{42, 42}, 1e-4);
  EXPECT_EQ(out, (std::vector<double>{0.5, 0.5}));
}

TEST(UpdateStatesTest, HandComputedStep) {
  const auto out = update_states(std::vector<double>{0.6, 0.4}, std::vector<double>{100, 50}, 1e-4);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_NEAR(out[0], 0.6012, 1e-12);
  EXPECT_NEAR(out[1], 0.3988, 1e-12);
}

TEST(UpdateStatesTest, ConservesSimplexSum) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  std::uniform_real_distribution<double> welfare(0.0, 1000.0);
  std::uniform_int_distribution<int> size(1, 50);
  for (int k = 0; k < 1000; ++k) {
    const int n = size(rng);
    std::vector<double> states(n);
    std::vector<double> welfares(n);
    for (int j = 0; j < n; ++j) {
      states[j] = unit(rng);
      welfares[j] = welfare(rng);
    }
    const double total = std::accumulate(states.begin(), states.end(), 0.0);
    for (auto& s : states) s /= total;
    const auto out = update_states(states, welfares, 1e-4);
    const double in_sum = std::accumulate(states.begin(), states.end(), 0.0);
    const double out_sum = std::accumulate(out.begin(), out.end(), 0.0);
    EXPECT_NEAR(out_sum, in_sum, 1e-12);
  }
}

TEST(UpdatePricesTest, Examples) {
  MarketParams p;
  EXPECT_NEAR(update_prices(std::vector<double>{9}, std::vector<double>{30}, std::vector<double>{12}, p)[0],
              11.7, 1e-12);
  EXPECT_EQ(update_prices(std::vector<double>{13.25}, std::vector<double>{17}, std::vector<double>{17}, p)[0],
            13.25);
  EXPECT_EQ(update_prices(std::vector<double>{19.5}, std::vector<double>{20}, std::vector<double>{10}, p)[0],
            20.0);
  EXPECT_EQ(update_prices(std::vector<double>{4.5}, std::vector<double>{0}, std::vector<double>{20}, p)[0],
            4.0);
}

TEST(UpdatePricesTest, AlwaysWithinBounds) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> price(4.0, 20.0);
  std::uniform_real_distribution<double> quantity(0.0, 500.0);
  MarketParams p;
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> prices(5);
    std::vector<double> demands(5);
    std::vector<double> supplies(5);
    for (int j = 0; j < 5; ++j) {
      prices[j] = price(rng);
      demands[j] = quantity(rng);
      supplies[j] = quantity(rng);
    }
    for (double v : update_prices(prices, demands, supplies, p)) {
      EXPECT_GE(v, p.rho_sell);
      EXPECT_LE(v, p.rho_buy);
    }
  }
}

TEST(UpdatePricesTest, LengthMismatchIsInputError) {
  EXPECT_THROW(update_prices(std::vector<double>{9, 9}, std::vector<double>{1},
                             std::vector<double>{1, 1}, MarketParams{}),
               InputError);
}

}  // namespace
}  // namespace pfet::market
