#include "pfet/he/serialize.hpp"

#include <algorithm>
#include <string>

#include "pfet/error.hpp"

namespace pfet::he {

namespace {

constexpr std::size_t kKeyIdSize = std::tuple_size_v<KeyId>;

KeyId read_key_id(ByteReader& in) {
  KeyId id{};
  const auto bytes = in.raw(kKeyIdSize);
  std::copy(bytes.begin(), bytes.end(), id.begin());
  return id;
}

template <typename Key>
void write_key(ByteWriter& out, const Key& key) {
  out.u32(static_cast<std::uint32_t>(kKeyIdSize + key.token.size()));
  out.raw(key.key_id);
  out.raw(key.token);
}

template <typename Key>
Key read_key(ByteReader& in) {
  const std::uint32_t length = in.u32();
  if (length < kKeyIdSize) throw DecodeError("key record shorter than key id");
  auto body = in.raw(length);
  ByteReader sub(body);
  Key key;
  key.key_id = read_key_id(sub);
  const auto token = sub.raw(sub.remaining());
  key.token.assign(token.begin(), token.end());
  return key;
}

}  // namespace

void ByteWriter::u16(std::uint16_t v) {
  bytes_.push_back(static_cast<std::uint8_t>(v >> 8));
  bytes_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::u32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) bytes_.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint8_t ByteReader::u8() { return raw(1)[0]; }

std::uint16_t ByteReader::u16() {
  const auto b = raw(2);
  return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
}

std::uint32_t ByteReader::u32() {
  const auto b = raw(4);
  return (static_cast<std::uint32_t>(b[0]) << 24) | (static_cast<std::uint32_t>(b[1]) << 16) |
         (static_cast<std::uint32_t>(b[2]) << 8) | static_cast<std::uint32_t>(b[3]);
}

std::span<const std::uint8_t> ByteReader::raw(std::size_t n) {
  if (n > remaining()) {
    throw DecodeError("truncated input: need " + std::to_string(n) + " bytes, have " +
                      std::to_string(remaining()));
  }
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

void write_ciphertext(ByteWriter& out, const Ciphertext& ct) {
  out.u32(static_cast<std::uint32_t>(kKeyIdSize + 2 + ct.payload.size()));
  out.raw(ct.key_id);
  out.u16(ct.level);
  out.raw(ct.payload);
}

Ciphertext read_ciphertext(ByteReader& in) {
  const std::uint32_t length = in.u32();
  if (length < kKeyIdSize + 2) throw DecodeError("ciphertext record too short");
  ByteReader body(in.raw(length));
  Ciphertext ct;
  ct.key_id = read_key_id(body);
  ct.level = body.u16();
  const auto payload = body.raw(body.remaining());
  ct.payload.assign(payload.begin(), payload.end());
  return ct;
}

void write_public_key(ByteWriter& out, const PublicKey& pk) { write_key(out, pk); }
void write_eval_key(ByteWriter& out, const EvalKey& evk) { write_key(out, evk); }
PublicKey read_public_key(ByteReader& in) { return read_key<PublicKey>(in); }
EvalKey read_eval_key(ByteReader& in) { return read_key<EvalKey>(in); }

Bytes serialize(const Ciphertext& ct) {
  ByteWriter out;
  write_ciphertext(out, ct);
  return std::move(out).bytes();
}

Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  Ciphertext ct = read_ciphertext(in);
  if (!in.done()) throw DecodeError("trailing bytes after ciphertext");
  return ct;
}

}  // namespace pfet::he
