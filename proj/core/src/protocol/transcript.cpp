#include "pfet/protocol/transcript.hpp"

namespace pfet::protocol {

Transcript::Transcript(const Transcript& other) : entries_(other.entries()) {}

Transcript& Transcript::operator=(const Transcript& other) {
  if (this != &other) {
    auto copy = other.entries();
    std::lock_guard lock(mutex_);
    entries_ = std::move(copy);
  }
  return *this;
}

void Transcript::record(Direction direction, std::uint32_t iteration, he::Bytes bytes) {
  std::lock_guard lock(mutex_);
  entries_.push_back({direction, iteration, std::move(bytes)});
}

std::vector<TranscriptEntry> Transcript::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

std::size_t Transcript::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::size_t Transcript::total_bytes() const {
  std::lock_guard lock(mutex_);
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.bytes.size();
  return n;
}

}  // namespace pfet::protocol
