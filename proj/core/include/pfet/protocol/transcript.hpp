#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

#include "pfet/he/provider.hpp"
#include "pfet/protocol/messages.hpp"

namespace pfet::protocol {

struct TranscriptEntry {
  Direction direction;
  std::uint32_t iteration;
  he::Bytes bytes;
};

/// Append-only record of every message that crossed the seller/buyer
/// boundary, in order.
class Transcript {
 public:
  Transcript() = default;
  Transcript(const Transcript& other);
  Transcript& operator=(const Transcript& other);

  void record(Direction direction, std::uint32_t iteration, he::Bytes bytes);

  /// Snapshot of all entries so far.
  std::vector<TranscriptEntry> entries() const;
  std::size_t size() const;
  std::size_t total_bytes() const;

 private:
  mutable std::mutex mutex_;
  std::vector<TranscriptEntry> entries_;
};

}  // namespace pfet::protocol
