#pragma once

#include <span>
#include <vector>

#include "pfet/market/types.hpp"

namespace pfet::market {

/// Satisfaction from consuming x kW: lambda*x - (theta/2)*x^2.
double utility(double x, double lambda, double theta);

/// Utility minus the cost of buying x at the given price.
double net_utility(double x, double price, const BuyerProfile& buyer);

/// Unclamped stationary point (lambda - price) / theta of net_utility.
double raw_best_response(double price, const BuyerProfile& buyer);

/// Purchase maximizing net_utility over x >= 0.
double best_response(double price, const BuyerProfile& buyer);

/// Accumulated net utility of all buyers from one seller:
/// (1/2) * sum_i theta_i * X_ji^2.
double seller_welfare(std::span<const double> purchases_for_seller,
                      std::span<const BuyerProfile> buyers);

/// State-weighted mean welfare sum_j gamma_j * W_j.
double average_welfare(std::span<const double> welfares, std::span<const double> states);

/// gamma_j * sum_i X_ji.
double demand_for_seller(double state, std::span<const double> purchases_for_seller);

/// Replicator step gamma_j + eta2 * gamma_j * (W_j - avg). No renormalization.
std::vector<double> update_states(std::span<const double> states,
                                  std::span<const double> welfares, double eta2);

/// Tatonnement step pi_j + eta1 * (D_j - S_j), clamped to [rho_sell, rho_buy].
std::vector<double> update_prices(std::span<const double> prices,
                                  std::span<const double> demands,
                                  std::span<const double> supplies, const MarketParams& params);

/// max_j |D_j - S_j|.
double max_excess(std::span<const double> demands, std::span<const double> supplies);

}  // namespace pfet::market
