#include "pfet/protocol/scan.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>
#include <utility>

#include "pfet/market/game.hpp"

namespace pfet::protocol {

namespace {

std::uint64_t load_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(p[k]) << (8 * k);
  return v;
}

std::uint64_t load_be(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v = (v << 8) | p[k];
  return v;
}

std::string indexed(const char* name, std::size_t a, int iteration) {
  return std::string(name) + "[" + std::to_string(a) + "]@" + std::to_string(iteration);
}

class Matcher {
 public:
  Matcher(std::span<const SensitiveValue> values, int scale_bits) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double v = values[k].value;
      if (v == 0.0 || !std::isfinite(v)) continue;
      const auto bits = static_cast<std::int64_t>(std::bit_cast<std::uint64_t>(v));
      for (std::int64_t d = -kFloatSlackUlps; d <= kFloatSlackUlps; ++d) {
        float_images_.emplace(static_cast<std::uint64_t>(bits + d), k);
      }
      const long double scaled = std::ldexp(static_cast<long double>(v), scale_bits);
      if (std::fabs(scaled) < 9.0e18L) {
        fixed_images_.emplace_back(static_cast<std::int64_t>(std::nearbyint(scaled)), k);
      }
    }
    std::sort(fixed_images_.begin(), fixed_images_.end());
  }

  /// Index of a matching value, or npos.
  std::size_t match_float(std::uint64_t bits) const {
    auto it = float_images_.find(bits);
    return it == float_images_.end() ? npos : it->second;
  }

  std::size_t match_fixed(std::uint64_t word) const {
    const auto v = static_cast<std::int64_t>(word);
    const std::int64_t lo = v > INT64_MIN + kFixedSlack ? v - kFixedSlack : INT64_MIN;
    auto it = std::lower_bound(fixed_images_.begin(), fixed_images_.end(),
                               std::pair<std::int64_t, std::size_t>{lo, 0});
    if (it == fixed_images_.end()) return npos;
    const std::int64_t hi = v < INT64_MAX - kFixedSlack ? v + kFixedSlack : INT64_MAX;
    return it->first <= hi ? it->second : npos;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::unordered_map<std::uint64_t, std::size_t> float_images_;
  std::vector<std::pair<std::int64_t, std::size_t>> fixed_images_;
};

}  // namespace

std::vector<SensitiveValue> sensitive_values(const market::MarketScenario& scenario,
                                             const market::RunTrace& trace) {
  std::vector<SensitiveValue> out;
  for (std::size_t i = 0; i < scenario.buyers.size(); ++i) {
    out.push_back({"lambda[" + std::to_string(i) + "]", scenario.buyers[i].lambda});
    out.push_back({"theta[" + std::to_string(i) + "]", scenario.buyers[i].theta});
  }
  for (const auto& report : trace.iterations) {
    const int t = report.iteration;
    std::vector<double> welfares(report.prices.size());
    for (std::size_t j = 0; j < report.prices.size(); ++j) {
      out.push_back({indexed("price", j, t), report.prices[j]});
      std::vector<double> row(scenario.buyers.size());
      for (std::size_t i = 0; i < scenario.buyers.size(); ++i) {
        row[i] = market::best_response(report.prices[j], scenario.buyers[i]);
        out.push_back({"X[" + std::to_string(j) + "][" + std::to_string(i) + "]@" +
                           std::to_string(t),
                       row[i]});
      }
      welfares[j] = market::seller_welfare(row, scenario.buyers);
      out.push_back({indexed("W", j, t), welfares[j]});
    }
    if (report.states.size() == welfares.size()) {
      out.push_back({"avgW@" + std::to_string(t), market::average_welfare(welfares, report.states)});
    }
  }
  return out;
}

ScanReport transcript_scan(const Transcript& transcript, std::span<const SensitiveValue> values,
                           int scale_bits) {
  const Matcher matcher(values, scale_bits);
  ScanReport report;
  report.values_checked = values.size();
  const auto entries = transcript.entries();
  report.messages_scanned = entries.size();
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto& bytes = entries[e].bytes;
    if (bytes.size() < 8) continue;
    for (std::size_t off = 0; off + 8 <= bytes.size(); ++off) {
      const std::uint64_t le = load_le(bytes.data() + off);
      const std::uint64_t be = load_be(bytes.data() + off);
      const std::pair<const char*, std::size_t> candidates[] = {
          {"f64-le", matcher.match_float(le)},
          {"f64-be", matcher.match_float(be)},
          {"fixed-le", matcher.match_fixed(le)},
          {"fixed-be", matcher.match_fixed(be)},
      };
      for (const auto& [encoding, index] : candidates) {
        if (index == Matcher::npos) continue;
        report.hits.push_back({e, entries[e].iteration, entries[e].direction, off, encoding,
                               values[index].label});
        break;
      }
    }
  }
  return report;
}

ScanReport transcript_scan(const Transcript& transcript, const market::MarketScenario& scenario,
                           const market::RunTrace& trace, int scale_bits) {
  const auto values = sensitive_values(scenario, trace);
  return transcript_scan(transcript, values, scale_bits);
}

std::size_t count_occurrences(const Transcript& transcript, std::span<const std::uint8_t> needle) {
  if (needle.empty()) return 0;
  std::size_t count = 0;
  for (const auto& entry : transcript.entries()) {
    auto it = entry.bytes.begin();
    while (true) {
      it = std::search(it, entry.bytes.end(), needle.begin(), needle.end());
      if (it == entry.bytes.end()) break;
      ++count;
      ++it;
    }
  }
  return count;
}

}  // namespace pfet::protocol
