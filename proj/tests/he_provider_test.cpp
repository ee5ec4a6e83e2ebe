#include <cmath>
#include <cstring>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "pfet/error.hpp"
#include "pfet/he/clear_provider.hpp"
#include "pfet/he/fixed_point.hpp"
#include "pfet/he/serialize.hpp"
#include "pfet/he/shadow_provider.hpp"

namespace pfet::he {
namespace {

class ShadowProviderTest : public ::testing::Test {
 protected:
  ShadowProvider provider_{SchemeParams{20, 7}, 1234};
  KeyMaterial keys_ = provider_.keygen();
  const double q_ = std::ldexp(1.0, -20);

  Ciphertext enc(double v, std::uint64_t salt = 0) { return provider_.encrypt(keys_.public_key, v, salt); }
  double dec(const Ciphertext& c) { return provider_.decrypt(keys_.secret_key, c); }
};

TEST_F(ShadowProviderTest, RoundTrip) {
  EXPECT_EQ(dec(enc(0.0)), 0.0);
  EXPECT_NEAR(dec(enc(9.0)), 9.0, q_);
  EXPECT_NEAR(dec(enc(-22.2)), -22.2, q_);
  EXPECT_EQ(enc(9.0).level, 0);
}

TEST_F(ShadowProviderTest, KeygenIsFresh) {
  const auto other = provider_.keygen();
  EXPECT_NE(other.key_id(), keys_.key_id());
  EXPECT_NE(other.secret_key.token, keys_.secret_key.token);
}

TEST_F(ShadowProviderTest, DecryptUnderOtherKeyIsKeyMismatch) {
  const auto other = provider_.keygen();
  EXPECT_THROW(provider_.decrypt(other.secret_key, enc(9.0)), KeyMismatch);
}

TEST_F(ShadowProviderTest, ForgedSecretKeyRejected) {
  SecretKey forged = keys_.secret_key;
  forged.token[0] ^= 1;
  EXPECT_THROW(provider_.decrypt(forged, enc(1.0)), KeyMismatch);
  // A public key's token does not grant decryption either.
  SecretKey from_public{keys_.public_key.key_id, keys_.public_key.token};
  EXPECT_THROW(provider_.decrypt(from_public, enc(1.0)), KeyMismatch);
}

TEST_F(ShadowProviderTest, AddSub) {
  EXPECT_NEAR(dec(provider_.add(enc(2.0), enc(3.0))), 5.0, q_);
  EXPECT_NEAR(dec(provider_.add(enc(7.25), enc(0.0))), 7.25, q_);
  EXPECT_NEAR(dec(provider_.sub(enc(20.1), enc(9.0))), 11.1, q_);
  const auto other = provider_.keygen();
  EXPECT_THROW(provider_.add(enc(1.0), provider_.encrypt(other.public_key, 1.0)), KeyMismatch);
}

TEST_F(ShadowProviderTest, MultiplyAndLevels) {
  const auto p = provider_.multiply(keys_.eval_key, enc(3.0), enc(4.0));
  EXPECT_NEAR(dec(p), 12.0, q_);
  EXPECT_EQ(p.level, 1);
  const auto x = enc(-5.5);
  EXPECT_NEAR(dec(provider_.multiply_plain(x, 1.0)), -5.5, q_);
  EXPECT_EQ(provider_.multiply_plain(x, 1.0).level, 1);
  const auto deeper = provider_.multiply(keys_.eval_key, p, p);
  EXPECT_EQ(deeper.level, 3);
  EXPECT_EQ(provider_.add(deeper, enc(1.0)).level, 3);
}

TEST_F(ShadowProviderTest, MultiplyRequiresMatchingEvalKey) {
  const auto other = provider_.keygen();
  EXPECT_THROW(provider_.multiply(other.eval_key, enc(1.0), enc(2.0)), KeyMismatch);
}

TEST_F(ShadowProviderTest, DepthBudgetBoundary) {
  // depth_budget multiplications succeed; the next one raises.
  Ciphertext c = enc(1.0);
  for (int k = 1; k <= provider_.params().depth_budget; ++k) {
    c = provider_.multiply_plain(c, 1.0);
    EXPECT_EQ(c.level, k);
  }
  EXPECT_THROW(provider_.multiply_plain(c, 1.0), DepthExhausted);
  EXPECT_THROW(provider_.multiply(keys_.eval_key, c, enc(1.0)), DepthExhausted);
}

TEST_F(ShadowProviderTest, CtCtDepthCountsBothOperands) {
  const auto a = provider_.multiply_plain(provider_.multiply_plain(enc(1.0), 1.0), 1.0);  // 2
  const auto b = provider_.multiply_plain(provider_.multiply_plain(
                     provider_.multiply_plain(enc(1.0), 1.0), 1.0), 1.0);             // 3
  EXPECT_EQ(provider_.multiply(keys_.eval_key, a, b).level, 6);
  const auto c = provider_.multiply_plain(b, 1.0);  // 4
  EXPECT_EQ(provider_.multiply(keys_.eval_key, b, b).level, 7);
  EXPECT_EQ(provider_.multiply(keys_.eval_key, a, c).level, 7);
  EXPECT_THROW(provider_.multiply(keys_.eval_key, b, c), DepthExhausted);
}

TEST_F(ShadowProviderTest, Sum) {
  std::vector<Ciphertext> v{enc(1.0), enc(2.0), enc(3.0)};
  EXPECT_NEAR(dec(provider_.sum(v)), 6.0, 3 * q_);
  std::vector<Ciphertext> one{enc(4.75)};
  EXPECT_NEAR(dec(provider_.sum(one)), 4.75, q_);
  std::vector<Ciphertext> none;
  EXPECT_THROW(provider_.sum(none), EmptyInput);
  const auto other = provider_.keygen();
  v.push_back(provider_.encrypt(other.public_key, 1.0));
  EXPECT_THROW(provider_.sum(v), KeyMismatch);
  std::vector<Ciphertext> mixed{enc(1.0), provider_.multiply_plain(enc(2.0), 1.0)};
  EXPECT_EQ(provider_.sum(mixed).level, 1);
}

TEST_F(ShadowProviderTest, HomomorphismProperty) {
  // |a|, |b| <= 1: each fresh encryption errs by at most 2^-21, so
  // add errs by <= 2^-20 and multiply by <= 3 * 2^-21 < 2^-19.
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double a = dist(rng);
    const double b = dist(rng);
    const auto ea = enc(a, 2 * k);
    const auto eb = enc(b, 2 * k + 1);
    const auto sum = provider_.add(ea, eb);
    const auto diff = provider_.sub(ea, eb);
    const auto prod = provider_.multiply(keys_.eval_key, ea, eb);
    const auto scaled = provider_.multiply_plain(ea, b);
    EXPECT_LE(std::abs(dec(sum) - (a + b)), std::ldexp(1.0, -20 + sum.level));
    EXPECT_LE(std::abs(dec(diff) - (a - b)), std::ldexp(1.0, -20 + diff.level));
    EXPECT_LE(std::abs(dec(prod) - a * b), std::ldexp(1.0, -20 + prod.level));
    EXPECT_LE(std::abs(dec(scaled) - a * b), std::ldexp(1.0, -20 + scaled.level));
  }
}

TEST_F(ShadowProviderTest, LevelAccountingProperty) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> op(0, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    Ciphertext c = enc(0.5, trial);
    int expected = 0;
    for (int step = 0; step < 6; ++step) {
      const Ciphertext fresh = enc(1.0, 1000 + step);
      switch (op(rng)) {
        case 0:
          c = provider_.add(c, fresh);
          break;
        case 1:
          c = provider_.sub(fresh, c);
          break;
        case 2:
          if (expected + 1 > 7) continue;
          c = provider_.multiply_plain(c, 0.9);
          expected += 1;
          break;
        case 3:
          if (expected + 1 > 7) continue;
          c = provider_.multiply(keys_.eval_key, c, fresh);
          expected += 1;
          break;
      }
      ASSERT_EQ(c.level, expected);
    }
  }
}

TEST_F(ShadowProviderTest, PayloadHidesEncodedValue) {
  for (double v : {9.0, 22.2, 0.5, 20.1, 123.21}) {
    const auto ct = enc(v);
    const auto raw = static_cast<std::uint64_t>(encode_fixed(v, 20));
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof v);
    ASSERT_EQ(ct.payload.size(), 16u);
    for (std::size_t off = 0; off + 8 <= ct.payload.size(); ++off) {
      std::uint64_t le = 0;
      for (int k = 0; k < 8; ++k) le |= static_cast<std::uint64_t>(ct.payload[off + k]) << (8 * k);
      EXPECT_NE(le, raw);
      EXPECT_NE(le, bits);
    }
  }
}

TEST_F(ShadowProviderTest, DeterministicAcrossProviderInstances) {
  ShadowProvider twin(SchemeParams{20, 7}, 1234);
  const auto twin_keys = twin.keygen();
  EXPECT_EQ(twin_keys.key_id(), keys_.key_id());
  EXPECT_EQ(twin.encrypt(twin_keys.public_key, 3.5, 9), enc(3.5, 9));
}

TEST_F(ShadowProviderTest, CountsOperations) {
  provider_.reset_stats();
  const auto a = enc(1.0);
  const auto b = provider_.multiply(keys_.eval_key, a, a);
  provider_.multiply_plain(b, 2.0);
  provider_.add(a, a);
  const auto s = provider_.stats();
  EXPECT_EQ(s.encryptions, 1u);
  EXPECT_EQ(s.ct_ct_multiplications, 1u);
  EXPECT_EQ(s.ct_plain_multiplications, 1u);
  EXPECT_EQ(s.additions, 1u);
}

TEST(SchemeParamsTest, BudgetBelowProtocolDepthRejected) {
  EXPECT_THROW(ShadowProvider(SchemeParams{20, 6}), ValidationError);
  EXPECT_THROW(ShadowProvider(SchemeParams{0, 7}), ValidationError);
  EXPECT_NO_THROW(ShadowProvider(SchemeParams{40, 9}));
}

TEST(ClearProviderTest, ExactArithmeticSameLevels) {
  ClearProvider provider;
  const auto keys = provider.keygen();
  const auto a = provider.encrypt(keys.public_key, 0.1);
  const auto b = provider.encrypt(keys.public_key, 0.2);
  EXPECT_EQ(provider.decrypt(keys.secret_key, provider.add(a, b)), 0.1 + 0.2);
  const auto p = provider.multiply(keys.eval_key, a, b);
  EXPECT_EQ(p.level, 1);
  EXPECT_EQ(provider.decrypt(keys.secret_key, p), 0.1 * 0.2);
  const auto other = provider.keygen();
  EXPECT_THROW(provider.decrypt(other.secret_key, a), KeyMismatch);
}

TEST(CiphertextSerializationTest, LayoutAndRoundTrip) {
  ShadowProvider provider;
  const auto keys = provider.keygen();
  auto ct = provider.multiply_plain(provider.encrypt(keys.public_key, 4.0), 2.0);
  const Bytes bytes = serialize(ct);
  ASSERT_EQ(bytes.size(), 4u + 16u + 2u + 16u);
  EXPECT_EQ((std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 4)),
            (std::vector<std::uint8_t>{0, 0, 0, 34}));
  EXPECT_TRUE(std::equal(ct.key_id.begin(), ct.key_id.end(), bytes.begin() + 4));
  EXPECT_EQ(bytes[20], 0);
  EXPECT_EQ(bytes[21], 1);  // level, big-endian
  EXPECT_EQ(deserialize_ciphertext(bytes), ct);
  EXPECT_NEAR(provider.decrypt(keys.secret_key, deserialize_ciphertext(bytes)), 8.0, 1e-6);
}

TEST(CiphertextSerializationTest, TruncatedInputRejected) {
  ShadowProvider provider;
  const auto keys = provider.keygen();
  Bytes bytes = serialize(provider.encrypt(keys.public_key, 1.0));
  bytes.pop_back();
  EXPECT_THROW(deserialize_ciphertext(bytes), DecodeError);
  bytes.push_back(0);
  bytes.push_back(0);
  EXPECT_THROW(deserialize_ciphertext(bytes), DecodeError);
}

}  // namespace
}  // namespace pfet::he
