#include "pfet/sim/output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pfet/error.hpp"

namespace pfet::sim {

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

void write_trace_csv(std::ostream& out, const market::MarketScenario& scenario,
                     const market::RunTrace& trace) {
  out << "iteration,seller_id,price,demand,supply,state,welfare\n";
  for (const auto& report : trace.iterations) {
    for (std::size_t j = 0; j < scenario.sellers.size(); ++j) {
      out << report.iteration << ',' << scenario.sellers[j].id << ','
          << format_number(report.prices[j]) << ',' << format_number(report.demands[j]) << ','
          << format_number(scenario.sellers[j].supply) << ',' << format_number(report.states[j])
          << ',';
      if (j < report.welfares.size()) out << format_number(report.welfares[j]);
      out << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const market::MarketScenario& scenario,
                       const market::RunTrace& trace) {
  out << "seller_id,final_price,final_demand,supply,final_state,iterations,converged\n";
  const auto& final = trace.final_state;
  for (std::size_t j = 0; j < scenario.sellers.size(); ++j) {
    out << scenario.sellers[j].id << ',' << format_number(final.prices[j]) << ',';
    if (!trace.iterations.empty()) out << format_number(trace.iterations.back().demands[j]);
    out << ',' << format_number(scenario.sellers[j].supply) << ','
        << format_number(final.states[j]) << ',' << trace.iteration_count() << ','
        << (trace.converged() ? "true" : "false") << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << contents;
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace pfet::sim
