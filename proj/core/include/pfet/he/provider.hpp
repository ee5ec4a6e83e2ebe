#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pfet::he {

/// Fixed-point scale and per-refresh multiplication budget.
struct SchemeParams {
  int scale_bits = 20;
  int depth_budget = 7;

  bool operator==(const SchemeParams&) const = default;
};

/// Deepest multiplication chain one protocol round puts on a ciphertext:
/// X(1) -> X^2(3) -> theta/2*X^2(4) -> gamma*W(5) -> gamma*(W-avg)(6) -> *eta2(7).
inline constexpr int kProtocolDepth = 7;

/// Throws ValidationError when scale_bits < 1, scale_bits > 48 or
/// depth_budget < kProtocolDepth.
void validate(const SchemeParams& params);

using Bytes = std::vector<std::uint8_t>;
using KeyId = std::array<std::uint8_t, 16>;

std::string to_hex(std::span<const std::uint8_t> bytes);

struct PublicKey {
  KeyId key_id{};
  Bytes token;

  bool operator==(const PublicKey&) const = default;
};

struct EvalKey {
  KeyId key_id{};
  Bytes token;

  bool operator==(const EvalKey&) const = default;
};

/// Decryption capability. Only the party holding this value can turn a
/// ciphertext back into a number.
struct SecretKey {
  KeyId key_id{};
  Bytes token;

  bool operator==(const SecretKey&) const = default;
};

struct KeyMaterial {
  PublicKey public_key;
  SecretKey secret_key;
  EvalKey eval_key;

  const KeyId& key_id() const noexcept { return public_key.key_id; }
};

/// Opaque encrypted real. `level` counts multiplications consumed since the
/// last fresh encryption.
struct Ciphertext {
  KeyId key_id{};
  std::uint16_t level = 0;
  Bytes payload;

  bool operator==(const Ciphertext&) const = default;
};

struct OpStats {
  std::uint64_t encryptions = 0;
  std::uint64_t decryptions = 0;
  std::uint64_t additions = 0;
  std::uint64_t ct_ct_multiplications = 0;
  std::uint64_t ct_plain_multiplications = 0;
};

/// Homomorphic arithmetic over fixed-point reals. The public surface checks
/// key binding and does level accounting identically for every backend:
///   add/sub:      level = max(a, b)
///   multiply:     level = a + b + 1       (must stay <= depth_budget)
///   mul_plain:    level = a + 1           (must stay <= depth_budget)
/// Backends implement only the payload arithmetic.
class Provider {
 public:
  explicit Provider(SchemeParams params);
  virtual ~Provider() = default;

  Provider(const Provider&) = delete;
  Provider& operator=(const Provider&) = delete;

  const SchemeParams& params() const noexcept { return params_; }
  virtual std::string name() const = 0;

  virtual KeyMaterial keygen() = 0;

  /// `salt` diversifies otherwise identical encryptions; it is not secret.
  Ciphertext encrypt(const PublicKey& pk, double value, std::uint64_t salt = 0) const;
  double decrypt(const SecretKey& sk, const Ciphertext& ct) const;

  Ciphertext add(const Ciphertext& a, const Ciphertext& b) const;
  Ciphertext sub(const Ciphertext& a, const Ciphertext& b) const;
  Ciphertext multiply(const EvalKey& evk, const Ciphertext& a, const Ciphertext& b) const;
  Ciphertext multiply_plain(const Ciphertext& a, double scalar) const;
  Ciphertext sum(std::span<const Ciphertext> cts) const;

  OpStats stats() const noexcept;
  void reset_stats() noexcept;

 protected:
  enum class BinaryOp : std::uint8_t { kAdd = 1, kSub = 2, kMul = 3 };

  virtual void check_public_key(const PublicKey& pk) const = 0;
  virtual void check_secret_key(const SecretKey& sk) const = 0;
  virtual void check_eval_key(const EvalKey& evk) const = 0;

  virtual Bytes encrypt_payload(const KeyId& key, double value, std::uint64_t salt) const = 0;
  virtual double decrypt_payload(const KeyId& key, const Bytes& payload) const = 0;
  virtual Bytes binary_payload(const KeyId& key, BinaryOp op, const Bytes& a,
                               const Bytes& b) const = 0;
  virtual Bytes scale_payload(const KeyId& key, const Bytes& a, double scalar) const = 0;

 private:
  void require_binding(const KeyId& expected, const Ciphertext& ct, const char* op) const;
  std::uint16_t next_level(int level, const char* op) const;

  SchemeParams params_;
  mutable std::atomic<std::uint64_t> encryptions_{0};
  mutable std::atomic<std::uint64_t> decryptions_{0};
  mutable std::atomic<std::uint64_t> additions_{0};
  mutable std::atomic<std::uint64_t> ct_ct_multiplications_{0};
  mutable std::atomic<std::uint64_t> ct_plain_multiplications_{0};
};

}  // namespace pfet::he
