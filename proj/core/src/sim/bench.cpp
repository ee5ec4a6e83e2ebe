#include "pfet/sim/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "pfet/error.hpp"
#include "pfet/he/shadow_provider.hpp"
#include "pfet/market/engine.hpp"
#include "pfet/protocol/session.hpp"
#include "pfet/sim/output.hpp"
#include "pfet/sim/run.hpp"

namespace pfet::sim {

namespace {

using Clock = std::chrono::steady_clock;

TimingStats summarize(const std::vector<double>& samples) {
  TimingStats s;
  if (samples.empty()) return s;
  double sum = 0.0;
  for (double x : samples) sum += x;
  s.mean_s = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double sq = 0.0;
    for (double x : samples) sq += (x - s.mean_s) * (x - s.mean_s);
    s.stddev_s = std::sqrt(sq / static_cast<double>(samples.size() - 1));
  }
  return s;
}

template <typename F>
double seconds(F&& body) {
  const auto start = Clock::now();
  body();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// A tolerance no synthetic market reaches in a handful of rounds, so every
// timed iteration is a full round.
constexpr double kNeverConverge = 1e-300;

TimingStats time_plaintext(const market::MarketScenario& scenario, int reps) {
  market::MarketState state = market::initial_state(scenario);
  state = market::run_iteration(state, scenario).first;  // warm-up
  std::vector<double> samples;
  for (int r = 0; r < reps; ++r) {
    samples.push_back(seconds([&] { state = market::run_iteration(state, scenario).first; }));
  }
  return summarize(samples);
}

void time_encrypted(const market::MarketScenario& scenario, int reps, BenchRow& row) {
  he::ShadowProvider provider({}, kDefaultProviderSeed);
  protocol::ProtocolSession session(scenario, provider);
  session.step();  // warm-up
  std::vector<double> samples;
  for (int r = 0; r < reps; ++r) {
    provider.reset_stats();
    samples.push_back(seconds([&] { session.step(); }));
    const auto stats = provider.stats();
    if (r == 0) {
      row.ct_ct_multiplications = stats.ct_ct_multiplications;
      row.ct_plain_multiplications = stats.ct_plain_multiplications;
    } else if (stats.ct_ct_multiplications != row.ct_ct_multiplications ||
               stats.ct_plain_multiplications != row.ct_plain_multiplications) {
      row.counts_constant = false;
    }
  }
  row.encrypted = summarize(samples);
}

}  // namespace

std::vector<BenchSize> parse_sizes(std::string_view text) {
  std::vector<BenchSize> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    const auto x = item.find('x');
    BenchSize size;
    try {
      if (x == std::string::npos) throw std::invalid_argument("missing 'x'");
      std::size_t used = 0;
      size.sellers = std::stoi(item.substr(0, x), &used);
      if (used != x) throw std::invalid_argument("trailing characters");
      const std::string rest = item.substr(x + 1);
      size.buyers = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw InputError("malformed size '" + item + "' (expected <sellers>x<buyers>)");
    }
    if (size.sellers < 1 || size.buyers < 1) {
      throw InputError("size '" + item + "' needs at least one seller and one buyer");
    }
    out.push_back(size);
  }
  if (out.empty()) throw InputError("no benchmark sizes given");
  return out;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* value = std::getenv("PFET_SEED");
  if (value == nullptr || *value == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(value, &end, 10);
  return (end != nullptr && *end == '\0') ? static_cast<std::uint64_t>(parsed) : fallback;
}

market::MarketScenario generate_scenario(BenchSize size, std::uint64_t seed) {
  market::MarketScenario scenario;
  std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(size.sellers) << 32) ^
                      static_cast<std::uint64_t>(size.buyers));
  std::uniform_real_distribution<double> supply(10.0, 20.0);
  std::uniform_real_distribution<double> price(scenario.params.rho_sell, scenario.params.rho_buy);
  for (int j = 0; j < size.sellers; ++j) {
    scenario.sellers.push_back({"s" + std::to_string(j + 1), supply(rng), price(rng)});
  }
  for (int i = 0; i < size.buyers; ++i) {
    scenario.buyers.push_back({"b" + std::to_string(i + 1), 20.1, 0.5});
  }
  return scenario;
}

std::optional<QuadraticFit> fit_quadratic(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InputError("fit_quadratic: length mismatch");
  if (std::set<double>(xs.begin(), xs.end()).size() < 3) return std::nullopt;
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd target(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    design(k, 0) = xs[k] * xs[k];
    design(k, 1) = xs[k];
    design(k, 2) = 1.0;
    target(k) = ys[k];
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(target);
  const Eigen::VectorXd residual = target - design * coef;
  const double mean = target.mean();
  const double ss_tot = (target.array() - mean).square().sum();
  const double ss_res = residual.squaredNorm();
  QuadraticFit fit{coef(0), coef(1), coef(2), ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
  return fit;
}

BenchReport bench_command(const BenchConfig& config) {
  if (config.sizes.empty()) throw InputError("no benchmark sizes given");
  if (config.reps < 1) throw InputError("reps must be >= 1");
  BenchReport report;
  report.reps = config.reps;
  for (const auto& size : config.sizes) {
    auto scenario = generate_scenario(size, config.seed);
    scenario.params.epsilon = kNeverConverge;
    scenario.params.max_iters = config.reps + 1;
    market::require_valid(scenario);
    BenchRow row;
    row.size = size;
    row.plaintext = time_plaintext(scenario, config.reps);
    time_encrypted(scenario, config.reps, row);
    report.rows.push_back(row);
  }
  std::vector<double> xs;
  std::vector<double> plain;
  std::vector<double> enc;
  for (const auto& row : report.rows) {
    xs.push_back(row.size.scaled_n());
    plain.push_back(row.plaintext.mean_s);
    enc.push_back(row.encrypted.mean_s);
  }
  report.plaintext_fit = fit_quadratic(xs, plain);
  report.encrypted_fit = fit_quadratic(xs, enc);
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "sellers,buyers,n,mode,mean_s,stddev_s,reps,ct_ct_mults,ct_plain_mults\n";
  for (const auto& row : report.rows) {
    const auto prefix = std::to_string(row.size.sellers) + ',' + std::to_string(row.size.buyers) +
                        ',' + format_number(row.size.scaled_n()) + ',';
    out << prefix << "plaintext," << format_number(row.plaintext.mean_s) << ','
        << format_number(row.plaintext.stddev_s) << ',' << report.reps << ",0,0\n";
    out << prefix << "encrypted," << format_number(row.encrypted.mean_s) << ','
        << format_number(row.encrypted.stddev_s) << ',' << report.reps << ','
        << row.ct_ct_multiplications << ',' << row.ct_plain_multiplications << '\n';
  }
}

void write_fit_csv(std::ostream& out, const BenchReport& report) {
  out << "mode,a,b,c,r_squared\n";
  const auto line = [&](const char* mode, const std::optional<QuadraticFit>& fit) {
    if (!fit) return;
    out << mode << ',' << format_number(fit->a) << ',' << format_number(fit->b) << ','
        << format_number(fit->c) << ',' << format_number(fit->r_squared) << '\n';
  };
  line("plaintext", report.plaintext_fit);
  line("encrypted", report.encrypted_fit);
}

void print_bench(std::ostream& out, const BenchReport& report) {
  for (const auto& row : report.rows) {
    out << row.size.sellers << 'x' << row.size.buyers << "  plaintext " << row.plaintext.mean_s
        << " s/iter  encrypted " << row.encrypted.mean_s << " s/iter (sd "
        << row.encrypted.stddev_s << ")  ct*ct " << row.ct_ct_multiplications << '\n';
  }
  if (report.encrypted_fit) {
    const auto& f = *report.encrypted_fit;
    out << "encrypted fit: t(n) = " << f.a << " n^2 + " << f.b << " n + " << f.c
        << "  (n = (N_S+N_B)/20, R^2 = " << f.r_squared << ")\n";
  } else {
    out << "fewer than three distinct sizes: no quadratic fit\n";
  }
}

void write_bench_outputs(const std::filesystem::path& out_dir, const BenchReport& report) {
  std::filesystem::create_directories(out_dir);
  std::ostringstream bench;
  write_bench_csv(bench, report);
  write_file(out_dir / "bench.csv", bench.str());
  std::ostringstream fit;
  write_fit_csv(fit, report);
  write_file(out_dir / "fit.csv", fit.str());
}

}  // namespace pfet::sim
