#include "pfet/he/shadow_provider.hpp"

#include <cmath>
#include <cstring>

#include "pfet/error.hpp"
#include "pfet/he/fixed_point.hpp"

namespace pfet::he {

namespace {

// splitmix64 finalizer.
constexpr std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return mix(a ^ mix(b)); }

void put_le(Bytes& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

std::uint64_t get_le(const Bytes& in, std::size_t offset) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(in[offset + k]) << (8 * k);
  return v;
}

std::uint64_t fold(const KeyId& key) {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  for (int k = 0; k < 8; ++k) {
    lo |= static_cast<std::uint64_t>(key[k]) << (8 * k);
    hi |= static_cast<std::uint64_t>(key[8 + k]) << (8 * k);
  }
  return mix(lo, hi);
}

}  // namespace

ShadowProvider::ShadowProvider(SchemeParams params, std::uint64_t seed)
    : Provider(params), seed_(seed) {}

double ShadowProvider::quantum() const noexcept {
  return std::ldexp(1.0, -(params().scale_bits + 1));
}

KeyMaterial ShadowProvider::keygen() {
  const std::uint64_t counter = next_key_.fetch_add(1, std::memory_order_relaxed);
  KeyId id{};
  const std::uint64_t lo = mix(seed_, 2 * counter);
  const std::uint64_t hi = mix(seed_, 2 * counter + 1);
  for (int k = 0; k < 8; ++k) {
    id[k] = static_cast<std::uint8_t>(lo >> (8 * k));
    id[8 + k] = static_cast<std::uint8_t>(hi >> (8 * k));
  }
  KeyMaterial keys;
  keys.public_key = {id, token(id, Role::kPublic)};
  keys.secret_key = {id, token(id, Role::kSecret)};
  keys.eval_key = {id, token(id, Role::kEval)};
  return keys;
}

std::uint64_t ShadowProvider::derive(const KeyId& key, Role role) const {
  return mix(mix(seed_, fold(key)), static_cast<std::uint64_t>(role));
}

Bytes ShadowProvider::token(const KeyId& key, Role role) const {
  Bytes out;
  const std::uint64_t a = derive(key, role);
  put_le(out, a);
  put_le(out, mix(a));
  return out;
}

void ShadowProvider::check_token(const KeyId& key, const Bytes& presented, Role role,
                                 const char* what) const {
  if (presented != token(key, role)) {
    throw KeyMismatch(std::string(what) + " for key " + to_hex(key) +
                      " is not valid for this provider");
  }
}

void ShadowProvider::check_public_key(const PublicKey& pk) const {
  check_token(pk.key_id, pk.token, Role::kPublic, "public key");
}

void ShadowProvider::check_secret_key(const SecretKey& sk) const {
  check_token(sk.key_id, sk.token, Role::kSecret, "secret key");
}

void ShadowProvider::check_eval_key(const EvalKey& evk) const {
  check_token(evk.key_id, evk.token, Role::kEval, "evaluation key");
}

ShadowProvider::Unpacked ShadowProvider::unpack(const KeyId& key, const Bytes& payload) const {
  if (payload.size() != 16) throw DecodeError("shadow payload must be 16 bytes");
  const std::uint64_t nonce = get_le(payload, 0);
  const std::uint64_t pad = mix(derive(key, Role::kMask), nonce);
  return {nonce, static_cast<std::int64_t>(get_le(payload, 8) ^ pad)};
}

Bytes ShadowProvider::pack(const KeyId& key, std::uint64_t nonce, std::int64_t value) const {
  const std::uint64_t pad = mix(derive(key, Role::kMask), nonce);
  Bytes out;
  out.reserve(16);
  put_le(out, nonce);
  put_le(out, static_cast<std::uint64_t>(value) ^ pad);
  return out;
}

Bytes ShadowProvider::encrypt_payload(const KeyId& key, double value, std::uint64_t salt) const {
  const std::int64_t raw = encode_fixed(value, params().scale_bits);
  const std::uint64_t nonce =
      mix(derive(key, Role::kNonce), mix(static_cast<std::uint64_t>(raw), salt));
  return pack(key, nonce, raw);
}

double ShadowProvider::decrypt_payload(const KeyId& key, const Bytes& payload) const {
  return decode_fixed(unpack(key, payload).value, params().scale_bits);
}

Bytes ShadowProvider::binary_payload(const KeyId& key, BinaryOp op, const Bytes& a,
                                     const Bytes& b) const {
  const auto ua = unpack(key, a);
  const auto ub = unpack(key, b);
  std::int64_t result = 0;
  switch (op) {
    case BinaryOp::kAdd:
      result = add_fixed(ua.value, ub.value);
      break;
    case BinaryOp::kSub:
      result = sub_fixed(ua.value, ub.value);
      break;
    case BinaryOp::kMul:
      result = multiply_fixed(ua.value, ub.value, params().scale_bits);
      break;
  }
  const std::uint64_t nonce = mix(mix(ua.nonce, ub.nonce), static_cast<std::uint64_t>(op));
  return pack(key, nonce, result);
}

Bytes ShadowProvider::scale_payload(const KeyId& key, const Bytes& a, double scalar) const {
  const auto ua = unpack(key, a);
  const std::int64_t result = scale_fixed(ua.value, scalar);
  std::uint64_t scalar_bits = 0;
  static_assert(sizeof scalar_bits == sizeof scalar);
  std::memcpy(&scalar_bits, &scalar, sizeof scalar);
  return pack(key, mix(ua.nonce, scalar_bits), result);
}

}  // namespace pfet::he
