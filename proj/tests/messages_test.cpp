#include <random>

#include <gtest/gtest.h>

#include "pfet/error.hpp"
#include "pfet/he/shadow_provider.hpp"
#include "pfet/protocol/messages.hpp"
#include "pfet/protocol/scan.hpp"
#include "pfet/protocol/transcript.hpp"

namespace pfet::protocol {
namespace {

class MessagesTest : public ::testing::Test {
 protected:
  he::ShadowProvider provider_;
  he::KeyMaterial keys_ = provider_.keygen();

  std::vector<he::Ciphertext> random_cts(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> value(-50.0, 50.0);
    std::uniform_int_distribution<int> depth(0, 3);
    std::vector<he::Ciphertext> out;
    for (std::size_t k = 0; k < n; ++k) {
      auto ct = provider_.encrypt(keys_.public_key, value(rng), rng());
      for (int d = depth(rng); d > 0; --d) ct = provider_.multiply_plain(ct, 1.0);
      out.push_back(std::move(ct));
    }
    return out;
  }
};

TEST_F(MessagesTest, Msg1RoundTripProperty) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> count(0, 12);
  for (int trial = 0; trial < 200; ++trial) {
    Msg1 msg;
    msg.iteration = static_cast<std::uint32_t>(rng());
    msg.enc_prices = random_cts(rng, count(rng));
    msg.enc_states = random_cts(rng, count(rng));
    msg.public_key = keys_.public_key;
    msg.eval_key = keys_.eval_key;
    const auto bytes = serialize(msg);
    ASSERT_EQ(parse_msg1(bytes), msg);
    ASSERT_EQ(serialize(parse_msg1(bytes)), bytes);
  }
}

TEST_F(MessagesTest, Msg2RoundTripProperty) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> count(0, 12);
  for (int trial = 0; trial < 200; ++trial) {
    Msg2 msg;
    msg.iteration = static_cast<std::uint32_t>(rng());
    msg.enc_demands = random_cts(rng, count(rng));
    msg.enc_states_next = random_cts(rng, count(rng));
    ASSERT_EQ(parse_msg2(serialize(msg)), msg);
  }
}

TEST_F(MessagesTest, HeaderLayout) {
  Msg2 msg;
  msg.iteration = 0x01020304;
  const auto bytes = serialize(msg);
  ASSERT_EQ(bytes.size(), 4u + 1u + 4u + 4u);
  EXPECT_EQ(bytes[0], 0x01);
  EXPECT_EQ(bytes[3], 0x04);
  EXPECT_EQ(bytes[4], static_cast<std::uint8_t>(Direction::kBuyerToSeller));
  const auto [iteration, direction] = peek_header(bytes);
  EXPECT_EQ(iteration, 0x01020304u);
  EXPECT_EQ(direction, Direction::kBuyerToSeller);
}

TEST_F(MessagesTest, NoSecretKeyOnWire) {
  Msg1 msg;
  msg.enc_prices = {provider_.encrypt(keys_.public_key, 9.0)};
  msg.public_key = keys_.public_key;
  msg.eval_key = keys_.eval_key;
  Transcript t;
  t.record(Direction::kSellerToBuyer, 0, serialize(msg));
  EXPECT_EQ(count_occurrences(t, keys_.secret_key.token), 0u);
  EXPECT_EQ(count_occurrences(t, keys_.public_key.token), 1u);
}

TEST_F(MessagesTest, MalformedInputRejected) {
  Msg1 msg;
  msg.enc_prices = {provider_.encrypt(keys_.public_key, 9.0)};
  msg.public_key = keys_.public_key;
  msg.eval_key = keys_.eval_key;
  auto bytes = serialize(msg);

  EXPECT_THROW(parse_msg2(bytes), DecodeError);  // wrong direction
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(parse_msg1(trailing), DecodeError);
  for (std::size_t cut = 0; cut < bytes.size(); ++cut) {
    const std::span<const std::uint8_t> prefix(bytes.data(), cut);
    EXPECT_THROW(parse_msg1(prefix), DecodeError) << "cut at " << cut;
  }
}

TEST(TranscriptTest, RecordsInOrderAndCopies) {
  Transcript t;
  t.record(Direction::kSellerToBuyer, 0, {1, 2, 3});
  t.record(Direction::kBuyerToSeller, 0, {4});
  const Transcript copy = t;
  EXPECT_EQ(copy.size(), 2u);
  EXPECT_EQ(copy.total_bytes(), 4u);
  EXPECT_EQ(copy.entries()[1].direction, Direction::kBuyerToSeller);
  const std::vector<std::uint8_t> needle{2, 3};
  EXPECT_EQ(count_occurrences(copy, needle), 1u);
}

}  // namespace
}  // namespace pfet::protocol
