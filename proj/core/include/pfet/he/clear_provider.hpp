#pragma once

#include <atomic>

#include "pfet/he/provider.hpp"

namespace pfet::he {

/// Debug backend: the payload is the raw little-endian IEEE-754 value and
/// arithmetic is plain double arithmetic. Key binding and level accounting
/// behave exactly like any other backend, so protocol structure can be
/// checked while every value stays visible on the wire. Never use it where
/// confidentiality matters; the transcript scanner flags it by design.
class ClearProvider final : public Provider {
 public:
  explicit ClearProvider(SchemeParams params = {});

  std::string name() const override { return "clear"; }
  KeyMaterial keygen() override;

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
  std::atomic<std::uint64_t> next_key_{0};
};

}  // namespace pfet::he
