#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pfet/he/provider.hpp"

namespace pfet::protocol {

enum class Direction : std::uint8_t { kSellerToBuyer = 1, kBuyerToSeller = 2 };

/// Seller side -> buyer side: encrypted prices and states plus the public
/// and evaluation keys. Never carries the secret key.
struct Msg1 {
  std::uint32_t iteration = 0;
  std::vector<he::Ciphertext> enc_prices;
  std::vector<he::Ciphertext> enc_states;
  he::PublicKey public_key;
  he::EvalKey eval_key;

  bool operator==(const Msg1&) const = default;
};

/// Buyer side -> seller side: encrypted demands and next-round states.
struct Msg2 {
  std::uint32_t iteration = 0;
  std::vector<he::Ciphertext> enc_demands;
  std::vector<he::Ciphertext> enc_states_next;

  bool operator==(const Msg2&) const = default;
};

/// Wire layout (all integers big-endian):
///   u32 iteration | u8 direction
///   u32 count | count x ciphertext record      (prices / demands)
///   u32 count | count x ciphertext record      (states / next states)
///   public key record | eval key record        (Msg1 only)
he::Bytes serialize(const Msg1& msg);
he::Bytes serialize(const Msg2& msg);

/// Throws DecodeError on truncation, trailing bytes or a wrong direction.
Msg1 parse_msg1(std::span<const std::uint8_t> bytes);
Msg2 parse_msg2(std::span<const std::uint8_t> bytes);

/// Reads only the header.
std::pair<std::uint32_t, Direction> peek_header(std::span<const std::uint8_t> bytes);

/// Row-major N_S x N_B grid of ciphertexts (rows are sellers).
class CipherMatrix {
 public:
  CipherMatrix() = default;
  CipherMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  he::Ciphertext& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const he::Ciphertext& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const he::Ciphertext> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<he::Ciphertext> data_;
};

}  // namespace pfet::protocol
