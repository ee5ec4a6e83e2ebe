#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "pfet/market/types.hpp"

namespace pfet::sim {

struct BenchSize {
  int sellers = 0;
  int buyers = 0;

  /// Scaled population size (N_S + N_B) / 20.
  double scaled_n() const noexcept { return (sellers + buyers) / 20.0; }
  bool operator==(const BenchSize&) const = default;
};

/// Parses "10x10,20x20,...". Throws InputError on malformed or empty lists.
std::vector<BenchSize> parse_sizes(std::string_view text);

inline constexpr std::uint64_t kDefaultBenchSeed = 20220101;

/// PFET_SEED when set and numeric, otherwise `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = kDefaultBenchSeed);

/// Synthetic market: theta 0.5, lambda 20.1, supplies uniform in [10, 20],
/// initial prices uniform in [rho_sell, rho_buy]; deterministic in `seed`.
market::MarketScenario generate_scenario(BenchSize size, std::uint64_t seed);

struct TimingStats {
  double mean_s = 0.0;
  double stddev_s = 0.0;
};

struct BenchRow {
  BenchSize size;
  TimingStats plaintext;
  TimingStats encrypted;
  std::uint64_t ct_ct_multiplications = 0;    // per iteration, encrypted mode
  std::uint64_t ct_plain_multiplications = 0;
  bool counts_constant = true;  // every timed iteration had the same counts
};

/// y = a n^2 + b n + c by least squares.
struct QuadraticFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double r_squared = 0.0;
};

/// std::nullopt when fewer than three distinct abscissae are available.
std::optional<QuadraticFit> fit_quadratic(std::span<const double> xs, std::span<const double> ys);

struct BenchConfig {
  std::vector<BenchSize> sizes;
  int reps = 5;
  std::uint64_t seed = kDefaultBenchSeed;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  int reps = 0;
  std::optional<QuadraticFit> plaintext_fit;
  std::optional<QuadraticFit> encrypted_fit;
};

/// For each size: one warm-up iteration, then `reps` timed iterations in each
/// mode. Sizes run sequentially.
BenchReport bench_command(const BenchConfig& config);

void write_bench_csv(std::ostream& out, const BenchReport& report);
void write_fit_csv(std::ostream& out, const BenchReport& report);
void print_bench(std::ostream& out, const BenchReport& report);

/// bench.csv + fit.csv into out_dir.
void write_bench_outputs(const std::filesystem::path& out_dir, const BenchReport& report);

}  // namespace pfet::sim
