// pfet: run P2P energy market scenarios in plaintext or encrypted mode and
// benchmark per-iteration cost.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pfet/error.hpp"
#include "pfet/sim/bench.hpp"
#include "pfet/sim/run.hpp"
#include "pfet/sim/scenario.hpp"

namespace {

void print_violations(const pfet::ValidationError& e) {
  std::cerr << "invalid scenario:\n";
  for (const auto& v : e.violations()) std::cerr << "  " << v.path << ": " << v.message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg P2P energy market simulator with an encrypted buyer side"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::string mode;
  double epsilon = 0.0;
  int max_iters = 0;

  auto* run = app.add_subcommand("run", "Run a scenario to equilibrium and write trace.csv/summary.csv");
  run->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->required();
  auto* mode_opt = run->add_option("--mode", mode, "Override mode")
                       ->check(CLI::IsMember({"plaintext", "encrypted"}));
  auto* eps_opt = run->add_option("--epsilon", epsilon, "Convergence tolerance, kW");
  auto* iters_opt = run->add_option("--max-iters", max_iters, "Iteration cap");

  std::string sizes = "10x10,20x20,30x30,40x40,50x50";
  int reps = 5;
  auto* bench = app.add_subcommand("bench", "Per-iteration timing in both modes with a quadratic fit");
  bench->add_option("--sizes", sizes, "Comma-separated <sellers>x<buyers> list")->capture_default_str();
  bench->add_option("--reps", reps, "Timed iterations per size (after one warm-up)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", out_dir, "Output directory")->required();

  auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
  validate->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      pfet::sim::RunOptions options;
      if (*mode_opt) options.mode = pfet::sim::parse_mode(mode);
      if (*eps_opt) options.epsilon = epsilon;
      if (*iters_opt) options.max_iters = max_iters;
      const auto scenario = pfet::sim::load_scenario(scenario_path);
      return pfet::sim::run_command(scenario, out_dir, options, std::cout);
    }
    if (*bench) {
      pfet::sim::BenchConfig config;
      config.sizes = pfet::sim::parse_sizes(sizes);
      config.reps = reps;
      config.seed = pfet::sim::seed_from_env();
      const auto report = pfet::sim::bench_command(config);
      pfet::sim::print_bench(std::cout, report);
      pfet::sim::write_bench_outputs(out_dir, report);
      return 0;
    }
    if (*validate) {
      const auto scenario = pfet::sim::load_scenario(scenario_path);
      std::cout << scenario_path << ": ok (" << scenario.market.num_sellers() << " sellers, "
                << scenario.market.num_buyers() << " buyers, "
                << pfet::sim::to_string(scenario.mode) << ")\n";
      return 0;
    }
  } catch (const pfet::ValidationError& e) {
    print_violations(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
