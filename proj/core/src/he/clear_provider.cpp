#include "pfet/he/clear_provider.hpp"

#include <bit>

#include "pfet/error.hpp"

namespace pfet::he {

namespace {

Bytes to_payload(double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  Bytes out(8);
  for (int k = 0; k < 8; ++k) out[k] = static_cast<std::uint8_t>(bits >> (8 * k));
  return out;
}

double from_payload(const Bytes& payload) {
  if (payload.size() != 8) throw DecodeError("clear payload must be 8 bytes");
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(payload[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

Bytes tag(const KeyId& key, std::uint8_t role) {
  Bytes out(key.begin(), key.end());
  out.push_back(role);
  return out;
}

void check(const KeyId& key, const Bytes& token, std::uint8_t role, const char* what) {
  if (token != tag(key, role)) throw KeyMismatch(std::string(what) + " token mismatch");
}

}  // namespace

ClearProvider::ClearProvider(SchemeParams params) : Provider(params) {}

KeyMaterial ClearProvider::keygen() {
  const std::uint64_t counter = next_key_.fetch_add(1, std::memory_order_relaxed) + 1;
  KeyId id{};
  id[0] = 0xC1;
  for (int k = 0; k < 8; ++k) id[8 + k] = static_cast<std::uint8_t>(counter >> (8 * k));
  return {{id, tag(id, 1)}, {id, tag(id, 2)}, {id, tag(id, 3)}};
}

void ClearProvider::check_public_key(const PublicKey& pk) const {
  check(pk.key_id, pk.token, 1, "public key");
}

void ClearProvider::check_secret_key(const SecretKey& sk) const {
  check(sk.key_id, sk.token, 2, "secret key");
}

void ClearProvider::check_eval_key(const EvalKey& evk) const {
  check(evk.key_id, evk.token, 3, "evaluation key");
}

Bytes ClearProvider::encrypt_payload(const KeyId&, double value, std::uint64_t) const {
  return to_payload(value);
}

double ClearProvider::decrypt_payload(const KeyId&, const Bytes& payload) const {
  return from_payload(payload);
}

Bytes ClearProvider::binary_payload(const KeyId&, BinaryOp op, const Bytes& a,
                                    const Bytes& b) const {
  const double x = from_payload(a);
  const double y = from_payload(b);
  switch (op) {
    case BinaryOp::kAdd:
      return to_payload(x + y);
    case BinaryOp::kSub:
      return to_payload(x - y);
    case BinaryOp::kMul:
      return to_payload(x * y);
  }
  return {};
}

Bytes ClearProvider::scale_payload(const KeyId&, const Bytes& a, double scalar) const {
  return to_payload(from_payload(a) * scalar);
}

}  // namespace pfet::he
