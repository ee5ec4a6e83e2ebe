#include "pfet/market/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pfet::market {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InputError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                     std::to_string(b) + ")");
  }
}

void add_if(std::vector<Violation>& out, bool violated, std::string path, std::string message) {
  if (violated) out.push_back({std::move(path), std::move(message)});
}

}  // namespace

std::vector<double> MarketScenario::supplies() const {
  std::vector<double> out;
  out.reserve(sellers.size());
  for (const auto& s : sellers) out.push_back(s.supply);
  return out;
}

std::vector<double> MarketScenario::initial_prices() const {
  std::vector<double> out;
  out.reserve(sellers.size());
  for (const auto& s : sellers) out.push_back(s.initial_price);
  return out;
}

std::vector<Violation> validate(const MarketScenario& scenario) {
  std::vector<Violation> out;
  const auto& p = scenario.params;
  add_if(out, !(p.rho_sell >= 0.0), "params.rho_sell", "must be >= 0");
  add_if(out, !(p.rho_sell < p.rho_buy), "params.rho_buy", "must be greater than rho_sell");
  add_if(out, !(p.eta1 > 0.0), "params.eta1", "must be > 0");
  add_if(out, !(p.eta2 > 0.0), "params.eta2", "must be > 0");
  add_if(out, !(p.epsilon > 0.0), "params.epsilon", "must be > 0");
  add_if(out, p.max_iters < 1, "params.max_iters", "must be >= 1");
  add_if(out, !(p.lambda_max > p.rho_buy), "params.lambda_max", "must be greater than rho_buy");

  add_if(out, scenario.sellers.empty(), "sellers", "at least one seller is required");
  add_if(out, scenario.buyers.empty(), "buyers", "at least one buyer is required");

  for (std::size_t j = 0; j < scenario.sellers.size(); ++j) {
    const auto& s = scenario.sellers[j];
    const std::string path = "sellers[" + std::to_string(j) + "]";
    add_if(out, s.id.empty(), path + ".id", "must not be empty");
    add_if(out, !(s.supply > 0.0), path + ".supply", "must be > 0");
    add_if(out, !(s.initial_price >= p.rho_sell && s.initial_price <= p.rho_buy),
           path + ".initial_price", "must lie within [rho_sell, rho_buy]");
  }
  for (std::size_t i = 0; i < scenario.buyers.size(); ++i) {
    const auto& b = scenario.buyers[i];
    const std::string path = "buyers[" + std::to_string(i) + "]";
    add_if(out, b.id.empty(), path + ".id", "must not be empty");
    add_if(out, !(b.theta > 0.0), path + ".theta", "must be > 0");
    add_if(out, !(b.lambda > p.rho_buy), path + ".lambda", "must be greater than rho_buy");
    add_if(out, !(b.lambda <= p.lambda_max), path + ".lambda", "must not exceed lambda_max");
  }
  return out;
}

void require_valid(const MarketScenario& scenario) {
  auto violations = validate(scenario);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

double utility(double x, double lambda, double theta) {
  return lambda * x - 0.5 * theta * x * x;
}

double net_utility(double x, double price, const BuyerProfile& buyer) {
  return utility(x, buyer.lambda, buyer.theta) - price * x;
}

double raw_best_response(double price, const BuyerProfile& buyer) {
  return (buyer.lambda - price) / buyer.theta;
}

double best_response(double price, const BuyerProfile& buyer) {
  return std::max(0.0, raw_best_response(price, buyer));
}

double seller_welfare(std::span<const double> purchases_for_seller,
                      std::span<const BuyerProfile> buyers) {
  require_same_length(purchases_for_seller.size(), buyers.size(), "seller_welfare");
  double sum = 0.0;
  for (std::size_t i = 0; i < buyers.size(); ++i) {
    const double x = purchases_for_seller[i];
    sum += buyers[i].theta * x * x;
  }
  return 0.5 * sum;
}

double average_welfare(std::span<const double> welfares, std::span<const double> states) {
  require_same_length(welfares.size(), states.size(), "average_welfare");
  double sum = 0.0;
  for (std::size_t j = 0; j < welfares.size(); ++j) sum += states[j] * welfares[j];
  return sum;
}

double demand_for_seller(double state, std::span<const double> purchases_for_seller) {
  double total = 0.0;
  for (double x : purchases_for_seller) total += x;
  return state * total;
}

std::vector<double> update_states(std::span<const double> states,
                                  std::span<const double> welfares, double eta2) {
  const double avg = average_welfare(welfares, states);
  std::vector<double> out(states.size());
  for (std::size_t j = 0; j < states.size(); ++j) {
    out[j] = states[j] + eta2 * states[j] * (welfares[j] - avg);
  }
  return out;
}

std::vector<double> update_prices(std::span<const double> prices,
                                  std::span<const double> demands,
                                  std::span<const double> supplies, const MarketParams& params) {
  require_same_length(prices.size(), demands.size(), "update_prices");
  require_same_length(prices.size(), supplies.size(), "update_prices");
  std::vector<double> out(prices.size());
  for (std::size_t j = 0; j < prices.size(); ++j) {
    const double next = prices[j] + params.eta1 * (demands[j] - supplies[j]);
    out[j] = std::min(params.rho_buy, std::max(params.rho_sell, next));
  }
  return out;
}

double max_excess(std::span<const double> demands, std::span<const double> supplies) {
  require_same_length(demands.size(), supplies.size(), "max_excess");
  double worst = 0.0;
  for (std::size_t j = 0; j < demands.size(); ++j) {
    worst = std::max(worst, std::abs(demands[j] - supplies[j]));
  }
  return worst;
}

}  // namespace pfet::market
