#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pfet/he/provider.hpp"
#include "pfet/market/types.hpp"
#include "pfet/protocol/transcript.hpp"

namespace pfet::protocol {

struct SensitiveValue {
  std::string label;  // e.g. "price[3]@7", "lambda[0]", "X[2][5]@1"
  double value;
};

/// Every scalar the protocol must keep off the wire: each posted price per
/// iteration, every buyer's lambda and theta, and the buyer-side
/// intermediates X_ji, W_Bj and the average welfare, recomputed in plaintext
/// from the prices and states in force at each iteration of `trace`.
std::vector<SensitiveValue> sensitive_values(const market::MarketScenario& scenario,
                                             const market::RunTrace& trace);

struct LeakHit {
  std::size_t entry = 0;  // index into the transcript
  std::uint32_t iteration = 0;
  Direction direction = Direction::kSellerToBuyer;
  std::size_t offset = 0;
  std::string encoding;  // "f64-le", "f64-be", "fixed-le", "fixed-be"
  std::string label;
};

struct ScanReport {
  std::vector<LeakHit> hits;
  std::size_t messages_scanned = 0;
  std::size_t values_checked = 0;

  bool clean() const noexcept { return hits.empty(); }
};

/// Number of quanta around a fixed-point image that still count as a hit.
inline constexpr std::int64_t kFixedSlack = 64;
/// ULPs around an IEEE-754 image that still count as a hit.
inline constexpr std::int64_t kFloatSlackUlps = 4;

/// Looks at every 8-byte window of every message, read as little- and
/// big-endian double and as little- and big-endian fixed-point integer at
/// `scale_bits`. At most one hit is reported per (message, offset). Values
/// equal to zero are skipped since their images coincide with padding.
ScanReport transcript_scan(const Transcript& transcript, std::span<const SensitiveValue> values,
                           int scale_bits);

/// Convenience form deriving the sensitive values from the run itself.
ScanReport transcript_scan(const Transcript& transcript, const market::MarketScenario& scenario,
                           const market::RunTrace& trace, int scale_bits);

/// Occurrences of `needle` anywhere in the transcript.
std::size_t count_occurrences(const Transcript& transcript, std::span<const std::uint8_t> needle);

}  // namespace pfet::protocol
