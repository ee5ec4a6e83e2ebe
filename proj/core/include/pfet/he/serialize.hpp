#pragma once

#include <cstdint>
#include <span>

#include "pfet/he/provider.hpp"

namespace pfet::he {

/// Append-only big-endian byte sink.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void raw(std::span<const std::uint8_t> data) { bytes_.insert(bytes_.end(), data.begin(), data.end()); }

  const Bytes& bytes() const& noexcept { return bytes_; }
  Bytes bytes() && noexcept { return std::move(bytes_); }

 private:
  Bytes bytes_;
};

/// Bounds-checked big-endian reader; throws DecodeError on truncation.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::span<const std::uint8_t> raw(std::size_t n);

  bool done() const noexcept { return pos_ == data_.size(); }
  std::size_t remaining() const noexcept { return data_.size() - pos_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

/// Ciphertext wire record:
///   u32 body length | key_id (16) | level (u16) | payload
void write_ciphertext(ByteWriter& out, const Ciphertext& ct);
Ciphertext read_ciphertext(ByteReader& in);

/// Key wire record (public and evaluation keys only):
///   u32 body length | key_id (16) | token
void write_public_key(ByteWriter& out, const PublicKey& pk);
void write_eval_key(ByteWriter& out, const EvalKey& evk);
PublicKey read_public_key(ByteReader& in);
EvalKey read_eval_key(ByteReader& in);

Bytes serialize(const Ciphertext& ct);
Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes);

}  // namespace pfet::he
