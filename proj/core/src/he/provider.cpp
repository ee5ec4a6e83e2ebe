#include "pfet/he/provider.hpp"

#include <algorithm>

#include "pfet/error.hpp"

namespace pfet::he {

void validate(const SchemeParams& params) {
  std::vector<Violation> violations;
  if (params.scale_bits < 1 || params.scale_bits > 48) {
    violations.push_back({"scheme.scale_bits", "must lie within [1, 48]"});
  }
  if (params.depth_budget < kProtocolDepth) {
    violations.push_back(
        {"scheme.depth_budget", "must be >= " + std::to_string(kProtocolDepth)});
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

Provider::Provider(SchemeParams params) : params_(params) { validate(params_); }

Ciphertext Provider::encrypt(const PublicKey& pk, double value, std::uint64_t salt) const {
  check_public_key(pk);
  Ciphertext out;
  out.key_id = pk.key_id;
  out.level = 0;
  out.payload = encrypt_payload(pk.key_id, value, salt);
  encryptions_.fetch_add(1, std::memory_order_relaxed);
  return out;
}

double Provider::decrypt(const SecretKey& sk, const Ciphertext& ct) const {
  check_secret_key(sk);
  require_binding(sk.key_id, ct, "decrypt");
  decryptions_.fetch_add(1, std::memory_order_relaxed);
  return decrypt_payload(ct.key_id, ct.payload);
}

Ciphertext Provider::add(const Ciphertext& a, const Ciphertext& b) const {
  require_binding(a.key_id, b, "add");
  Ciphertext out;
  out.key_id = a.key_id;
  out.level = std::max(a.level, b.level);
  out.payload = binary_payload(a.key_id, BinaryOp::kAdd, a.payload, b.payload);
  additions_.fetch_add(1, std::memory_order_relaxed);
  return out;
}

Ciphertext Provider::sub(const Ciphertext& a, const Ciphertext& b) const {
  require_binding(a.key_id, b, "sub");
  Ciphertext out;
  out.key_id = a.key_id;
  out.level = std::max(a.level, b.level);
  out.payload = binary_payload(a.key_id, BinaryOp::kSub, a.payload, b.payload);
  additions_.fetch_add(1, std::memory_order_relaxed);
  return out;
}

Ciphertext Provider::multiply(const EvalKey& evk, const Ciphertext& a, const Ciphertext& b) const {
  check_eval_key(evk);
  require_binding(evk.key_id, a, "multiply");
  require_binding(evk.key_id, b, "multiply");
  Ciphertext out;
  out.key_id = a.key_id;
  out.level = next_level(a.level + b.level, "multiply");
  out.payload = binary_payload(a.key_id, BinaryOp::kMul, a.payload, b.payload);
  ct_ct_multiplications_.fetch_add(1, std::memory_order_relaxed);
  return out;
}

Ciphertext Provider::multiply_plain(const Ciphertext& a, double scalar) const {
  Ciphertext out;
  out.key_id = a.key_id;
  out.level = next_level(a.level, "multiply_plain");
  out.payload = scale_payload(a.key_id, a.payload, scalar);
  ct_plain_multiplications_.fetch_add(1, std::memory_order_relaxed);
  return out;
}

Ciphertext Provider::sum(std::span<const Ciphertext> cts) const {
  if (cts.empty()) throw EmptyInput("sum of zero ciphertexts");
  Ciphertext acc = cts.front();
  for (std::size_t k = 1; k < cts.size(); ++k) acc = add(acc, cts[k]);
  return acc;
}

OpStats Provider::stats() const noexcept {
  OpStats s;
  s.encryptions = encryptions_.load(std::memory_order_relaxed);
  s.decryptions = decryptions_.load(std::memory_order_relaxed);
  s.additions = additions_.load(std::memory_order_relaxed);
  s.ct_ct_multiplications = ct_ct_multiplications_.load(std::memory_order_relaxed);
  s.ct_plain_multiplications = ct_plain_multiplications_.load(std::memory_order_relaxed);
  return s;
}

void Provider::reset_stats() noexcept {
  encryptions_ = 0;
  decryptions_ = 0;
  additions_ = 0;
  ct_ct_multiplications_ = 0;
  ct_plain_multiplications_ = 0;
}

void Provider::require_binding(const KeyId& expected, const Ciphertext& ct, const char* op) const {
  if (ct.key_id != expected) {
    throw KeyMismatch(std::string(op) + ": ciphertext bound to key " + to_hex(ct.key_id) +
                      ", expected " + to_hex(expected));
  }
}

std::uint16_t Provider::next_level(int level, const char* op) const {
  const int next = level + 1;
  if (next > params_.depth_budget) {
    throw DepthExhausted(std::string(op) + ": level " + std::to_string(next) +
                         " exceeds depth budget " + std::to_string(params_.depth_budget));
  }
  return static_cast<std::uint16_t>(next);
}

}  // namespace pfet::he
