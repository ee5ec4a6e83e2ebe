#include "pfet/sim/run.hpp"

#include <sstream>

#include "pfet/error.hpp"
#include "pfet/he/shadow_provider.hpp"
#include "pfet/market/engine.hpp"
#include "pfet/market/game.hpp"
#include "pfet/protocol/session.hpp"
#include "pfet/sim/output.hpp"

namespace pfet::sim {

ScenarioFile apply_overrides(ScenarioFile scenario, const RunOptions& options) {
  if (options.mode) scenario.mode = *options.mode;
  if (options.epsilon) scenario.market.params.epsilon = *options.epsilon;
  if (options.max_iters) scenario.market.params.max_iters = *options.max_iters;
  auto violations = validate(scenario);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return scenario;
}

RunResult execute(const ScenarioFile& scenario) {
  RunResult result;
  result.mode = scenario.mode;
  if (scenario.mode == Mode::kPlaintext) {
    result.trace = market::run_to_equilibrium(scenario.market);
  } else {
    he::ShadowProvider provider(scenario.scheme, kDefaultProviderSeed);
    auto run = protocol::run_protocol(scenario.market, provider);
    result.trace = std::move(run.trace);
    result.transcript = std::move(run.transcript);
  }
  return result;
}

int run_command(const ScenarioFile& input, const std::filesystem::path& out_dir,
                const RunOptions& options, std::ostream& log) {
  const ScenarioFile scenario = apply_overrides(input, options);
  const RunResult result = execute(scenario);

  std::filesystem::create_directories(out_dir);
  std::ostringstream trace_csv;
  write_trace_csv(trace_csv, scenario.market, result.trace);
  write_file(out_dir / "trace.csv", trace_csv.str());
  std::ostringstream summary_csv;
  write_summary_csv(summary_csv, scenario.market, result.trace);
  write_file(out_dir / "summary.csv", summary_csv.str());

  const auto& trace = result.trace;
  log << "mode: " << to_string(result.mode) << '\n'
      << "iterations: " << trace.iteration_count() << '\n';
  if (!trace.iterations.empty()) {
    log << "max |D - S|: "
        << format_number(market::max_excess(trace.iterations.back().demands,
                                            scenario.market.supplies()))
        << " kW\n";
  }
  if (!trace.converged()) {
    log << "error: no convergence within " << scenario.market.params.max_iters
        << " iterations (epsilon " << format_number(scenario.market.params.epsilon) << " kW)\n";
    return kExitNonConvergence;
  }
  log << "converged: yes\n";
  return 0;
}

}  // namespace pfet::sim
