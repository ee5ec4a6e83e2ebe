#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pfet/he/provider.hpp"
#include "pfet/market/types.hpp"
#include "pfet/protocol/messages.hpp"

namespace pfet::protocol {

enum class SaltTag : std::uint8_t { kPrice = 1, kState = 2, kLambda = 3 };

/// Distinct, non-secret salt per fresh encryption.
std::uint64_t encryption_salt(std::uint32_t iteration, SaltTag tag, std::uint32_t index);

// Buyer-side computation on ciphertexts. Everything here works with the
// public and evaluation keys from Msg1 only.

/// E(X_ji) = (E(lambda_i) - E(pi_j)) * (1/theta_i) for every seller j.
/// lambda_i is encrypted locally under the sellers' public key.
std::vector<he::Ciphertext> buyer_compute_purchases(const he::Provider& provider, const Msg1& msg1,
                                                    const market::BuyerProfile& buyer,
                                                    std::uint32_t buyer_index);

/// One buyer's own welfare contributions (theta_i / 2) * E(X_ji)^2, squared
/// and scaled before anything leaves the buyer.
std::vector<he::Ciphertext> buyer_welfare_terms(const he::Provider& provider,
                                                const he::EvalKey& evk,
                                                std::span<const he::Ciphertext> purchases,
                                                double theta);

/// E(D_j) = E(gamma_j) * sum_i E(X_ji).
std::vector<he::Ciphertext> buyer_aggregate_demand(const he::Provider& provider,
                                                   const he::EvalKey& evk,
                                                   std::span<const he::Ciphertext> enc_states,
                                                   const CipherMatrix& purchases);

/// Sums per-buyer welfare terms (rows sellers, columns buyers) into E(W_Bj).
std::vector<he::Ciphertext> sum_welfare_terms(const he::Provider& provider,
                                              const CipherMatrix& terms);

/// E(W_Bj) = (1/2) sum_i theta_i E(X_ji)^2, computed as per-buyer terms
/// followed by aggregation.
std::vector<he::Ciphertext> buyer_compute_welfares(const he::Provider& provider,
                                                   const he::EvalKey& evk,
                                                   const CipherMatrix& purchases,
                                                   std::span<const double> thetas);

/// E(avg) = sum_j E(gamma_j) * E(W_Bj).
he::Ciphertext buyer_average_welfare(const he::Provider& provider, const he::EvalKey& evk,
                                     std::span<const he::Ciphertext> enc_states,
                                     std::span<const he::Ciphertext> enc_welfares);

/// E(gamma_j') = E(gamma_j) + eta2 * E(gamma_j) * (E(W_Bj) - E(avg)).
std::vector<he::Ciphertext> buyer_update_states(const he::Provider& provider,
                                                const he::EvalKey& evk,
                                                std::span<const he::Ciphertext> enc_states,
                                                std::span<const he::Ciphertext> enc_welfares,
                                                const he::Ciphertext& enc_avg, double eta2);

/// What an individual buyer hands to the aggregator: ciphertexts only.
struct BuyerContribution {
  std::vector<he::Ciphertext> purchases;      // E(X_ji), one per seller
  std::vector<he::Ciphertext> welfare_terms;  // E(theta_i/2 X_ji^2), one per seller
};

class BuyerAgent {
 public:
  BuyerAgent(market::BuyerProfile profile, std::uint32_t index)
      : profile_(std::move(profile)), index_(index) {}

  BuyerContribution contribute(const he::Provider& provider, const Msg1& msg1) const;

  const market::BuyerProfile& profile() const noexcept { return profile_; }

 private:
  market::BuyerProfile profile_;
  std::uint32_t index_;
};

/// Aggregator role (held by buyer 0). Cannot decrypt anything it combines.
class BuyerAggregator {
 public:
  explicit BuyerAggregator(double eta2) : eta2_(eta2) {}

  Msg2 aggregate(const he::Provider& provider, const Msg1& msg1,
                 std::span<const BuyerContribution> contributions) const;

 private:
  double eta2_;
};

/// All buyers plus the aggregator: Msg1 in, Msg2 out. Provider errors are
/// annotated with the protocol block that raised them.
class BuyerSide {
 public:
  BuyerSide(std::vector<market::BuyerProfile> buyers, double eta2);

  Msg2 respond(const he::Provider& provider, const Msg1& msg1) const;

  std::size_t num_buyers() const noexcept { return agents_.size(); }

 private:
  std::vector<BuyerAgent> agents_;
  BuyerAggregator aggregator_;
};

}  // namespace pfet::protocol
