#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "pfet/market/types.hpp"

namespace pfet::sim {

/// Shortest decimal that round-trips, '.' as decimal point, no grouping.
std::string format_number(double value);

/// Header `iteration,seller_id,price,demand,supply,state,welfare`, then one
/// row per iteration per seller. price/state are the values in force that
/// iteration; welfare is blank when the run did not expose it.
void write_trace_csv(std::ostream& out, const market::MarketScenario& scenario,
                     const market::RunTrace& trace);

/// Header `seller_id,final_price,final_demand,supply,final_state,iterations,converged`,
/// one row per seller.
void write_summary_csv(std::ostream& out, const market::MarketScenario& scenario,
                       const market::RunTrace& trace);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace pfet::sim
