#include "pfet/protocol/messages.hpp"

#include "pfet/error.hpp"
#include "pfet/he/serialize.hpp"

namespace pfet::protocol {

namespace {

void write_header(he::ByteWriter& out, std::uint32_t iteration, Direction direction) {
  out.u32(iteration);
  out.u8(static_cast<std::uint8_t>(direction));
}

void write_array(he::ByteWriter& out, const std::vector<he::Ciphertext>& cts) {
  out.u32(static_cast<std::uint32_t>(cts.size()));
  for (const auto& ct : cts) he::write_ciphertext(out, ct);
}

std::vector<he::Ciphertext> read_array(he::ByteReader& in) {
  const std::uint32_t count = in.u32();
  // Each record needs at least its 4-byte length prefix.
  if (count > in.remaining() / 4) throw DecodeError("ciphertext count exceeds message size");
  std::vector<he::Ciphertext> out;
  out.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) out.push_back(he::read_ciphertext(in));
  return out;
}

std::uint32_t read_header(he::ByteReader& in, Direction expected) {
  const std::uint32_t iteration = in.u32();
  const auto direction = static_cast<Direction>(in.u8());
  if (direction != expected) throw DecodeError("unexpected message direction");
  return iteration;
}

}  // namespace

he::Bytes serialize(const Msg1& msg) {
  he::ByteWriter out;
  write_header(out, msg.iteration, Direction::kSellerToBuyer);
  write_array(out, msg.enc_prices);
  write_array(out, msg.enc_states);
  he::write_public_key(out, msg.public_key);
  he::write_eval_key(out, msg.eval_key);
  return std::move(out).bytes();
}

he::Bytes serialize(const Msg2& msg) {
  he::ByteWriter out;
  write_header(out, msg.iteration, Direction::kBuyerToSeller);
  write_array(out, msg.enc_demands);
  write_array(out, msg.enc_states_next);
  return std::move(out).bytes();
}

Msg1 parse_msg1(std::span<const std::uint8_t> bytes) {
  he::ByteReader in(bytes);
  Msg1 msg;
  msg.iteration = read_header(in, Direction::kSellerToBuyer);
  msg.enc_prices = read_array(in);
  msg.enc_states = read_array(in);
  msg.public_key = he::read_public_key(in);
  msg.eval_key = he::read_eval_key(in);
  if (!in.done()) throw DecodeError("trailing bytes after Msg1");
  return msg;
}

Msg2 parse_msg2(std::span<const std::uint8_t> bytes) {
  he::ByteReader in(bytes);
  Msg2 msg;
  msg.iteration = read_header(in, Direction::kBuyerToSeller);
  msg.enc_demands = read_array(in);
  msg.enc_states_next = read_array(in);
  if (!in.done()) throw DecodeError("trailing bytes after Msg2");
  return msg;
}

std::pair<std::uint32_t, Direction> peek_header(std::span<const std::uint8_t> bytes) {
  he::ByteReader in(bytes);
  const std::uint32_t iteration = in.u32();
  const std::uint8_t direction = in.u8();
  if (direction != 1 && direction != 2) throw DecodeError("unknown message direction");
  return {iteration, static_cast<Direction>(direction)};
}

}  // namespace pfet::protocol
