#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfet/error.hpp"

namespace pfet::market {

/// Static market parameters. Prices in cent/kWh, energy in kW.
struct MarketParams {
  double rho_sell = 4.0;   // price floor (feed-in tariff)
  double rho_buy = 20.0;   // price ceiling (retail price)
  double eta1 = 0.15;      // price step
  double eta2 = 1e-4;      // state step
  double epsilon = 0.01;   // convergence tolerance on |D_j - S_j|
  int max_iters = 10000;
  double lambda_max = 25.0;  // upper limit on buyer lambda
};

struct SellerProfile {
  std::string id;
  double supply = 0.0;
  double initial_price = 0.0;
};

struct BuyerProfile {
  std::string id;
  double lambda = 0.0;  // cent/kWh
  double theta = 0.0;   // cent/kWh^2
};

struct MarketScenario {
  MarketParams params;
  std::vector<SellerProfile> sellers;
  std::vector<BuyerProfile> buyers;

  std::size_t num_sellers() const noexcept { return sellers.size(); }
  std::size_t num_buyers() const noexcept { return buyers.size(); }
  std::vector<double> supplies() const;
  std::vector<double> initial_prices() const;
};

/// Collects every violated invariant, with field paths such as
/// "sellers[2].supply". Empty when the scenario is valid.
std::vector<Violation> validate(const MarketScenario& scenario);

/// Throws ValidationError listing all violations.
void require_valid(const MarketScenario& scenario);

/// Dense row-major matrix; rows are sellers, columns are buyers.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct MarketState {
  std::vector<double> prices;
  std::vector<double> states;
  int iteration = 0;

  bool operator==(const MarketState&) const = default;
};

/// Everything one round of the game produced. In encrypted mode the seller
/// side never sees buyer intermediates, so welfares, avg_welfare and
/// purchases stay empty, and states_after is empty on the converged round.
struct IterationReport {
  int iteration = 0;
  std::vector<double> prices;  // offered this round
  std::vector<double> states;  // in force this round
  std::vector<double> demands;
  std::vector<double> welfares;
  std::optional<double> avg_welfare;
  Matrix purchases;
  std::vector<double> prices_after;
  std::vector<double> states_after;
  bool converged = false;
  std::size_t clamped_purchases = 0;
  std::size_t best_response_evaluations = 0;

  bool operator==(const IterationReport&) const = default;
};

enum class RunStatus { kConverged, kNonConvergence };

struct RunTrace {
  std::vector<IterationReport> iterations;
  MarketState final_state;
  RunStatus status = RunStatus::kNonConvergence;

  bool converged() const noexcept { return status == RunStatus::kConverged; }
  std::size_t iteration_count() const noexcept { return iterations.size(); }

  bool operator==(const RunTrace&) const = default;
};

}  // namespace pfet::market
