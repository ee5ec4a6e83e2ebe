#pragma once

#include <atomic>
#include <cstdint>

#include "pfet/he/provider.hpp"

namespace pfet::he {

/// Deterministic reference backend. Values are held as fixed-point integers
/// (2^-scale_bits quantum) with exact integer arithmetic and one rounding per
/// multiplication; no noise is injected. Payloads are 16 bytes:
///
///   nonce (8, little-endian) || value XOR pad(key, nonce) (8, little-endian)
///
/// so serialized ciphertexts never contain the encoded value in the clear.
/// Keys carry an identifier and a capability token; the masking secret is
/// derived from the provider seed and never leaves the provider.
///
/// Not a cryptosystem: anyone holding the same seed can unmask payloads.
class ShadowProvider final : public Provider {
 public:
  explicit ShadowProvider(SchemeParams params = {}, std::uint64_t seed = 0x5eed'0f'fe7ULL);

  std::string name() const override { return "shadow"; }
  KeyMaterial keygen() override;

  /// Error bound after one fresh encryption: 2^-(scale_bits+1).
  double quantum() const noexcept;

 protected:
  void check_public_key(const PublicKey& pk) const override;
  void check_secret_key(const SecretKey& sk) const override;
  void check_eval_key(const EvalKey& evk) const override;

  Bytes encrypt_payload(const KeyId& key, double value, std::uint64_t salt) const override;
  double decrypt_payload(const KeyId& key, const Bytes& payload) const override;
  Bytes binary_payload(const KeyId& key, BinaryOp op, const Bytes& a,
                       const Bytes& b) const override;
  Bytes scale_payload(const KeyId& key, const Bytes& a, double scalar) const override;

 private:
  enum class Role : std::uint64_t { kPublic = 1, kSecret = 2, kEval = 3, kMask = 4, kNonce = 5 };

  std::uint64_t derive(const KeyId& key, Role role) const;
  Bytes token(const KeyId& key, Role role) const;
  void check_token(const KeyId& key, const Bytes& token, Role role, const char* what) const;

  struct Unpacked {
    std::uint64_t nonce;
    std::int64_t value;
  };
  Unpacked unpack(const KeyId& key, const Bytes& payload) const;
  Bytes pack(const KeyId& key, std::uint64_t nonce, std::int64_t value) const;

  std::uint64_t seed_;
  std::atomic<std::uint64_t> next_key_{0};
};

}  // namespace pfet::he
