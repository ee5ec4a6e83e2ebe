#include "pfet/protocol/buyer.hpp"

#include "pfet/error.hpp"
#include "pfet/protocol/blocks.hpp"

namespace pfet::protocol {

std::uint64_t encryption_salt(std::uint32_t iteration, SaltTag tag, std::uint32_t index) {
  return (static_cast<std::uint64_t>(iteration) << 32) |
         (static_cast<std::uint64_t>(tag) << 24) | (index & 0xFFFFFFu);
}

std::vector<he::Ciphertext> buyer_compute_purchases(const he::Provider& provider, const Msg1& msg1,
                                                    const market::BuyerProfile& buyer,
                                                    std::uint32_t buyer_index) {
  const he::Ciphertext enc_lambda = provider.encrypt(
      msg1.public_key, buyer.lambda, encryption_salt(msg1.iteration, SaltTag::kLambda, buyer_index));
  const double inv_theta = 1.0 / buyer.theta;
  std::vector<he::Ciphertext> out;
  out.reserve(msg1.enc_prices.size());
  for (const auto& enc_price : msg1.enc_prices) {
    out.push_back(provider.multiply_plain(provider.sub(enc_lambda, enc_price), inv_theta));
  }
  return out;
}

std::vector<he::Ciphertext> buyer_welfare_terms(const he::Provider& provider,
                                                const he::EvalKey& evk,
                                                std::span<const he::Ciphertext> purchases,
                                                double theta) {
  std::vector<he::Ciphertext> out;
  out.reserve(purchases.size());
  for (const auto& x : purchases) {
    out.push_back(provider.multiply_plain(provider.multiply(evk, x, x), 0.5 * theta));
  }
  return out;
}

std::vector<he::Ciphertext> buyer_aggregate_demand(const he::Provider& provider,
                                                   const he::EvalKey& evk,
                                                   std::span<const he::Ciphertext> enc_states,
                                                   const CipherMatrix& purchases) {
  if (enc_states.size() != purchases.rows()) {
    throw InputError("buyer_aggregate_demand: states and purchase rows differ in length");
  }
  std::vector<he::Ciphertext> out;
  out.reserve(enc_states.size());
  for (std::size_t j = 0; j < enc_states.size(); ++j) {
    out.push_back(provider.multiply(evk, enc_states[j], provider.sum(purchases.row(j))));
  }
  return out;
}

std::vector<he::Ciphertext> sum_welfare_terms(const he::Provider& provider,
                                              const CipherMatrix& terms) {
  std::vector<he::Ciphertext> out;
  out.reserve(terms.rows());
  for (std::size_t j = 0; j < terms.rows(); ++j) out.push_back(provider.sum(terms.row(j)));
  return out;
}

std::vector<he::Ciphertext> buyer_compute_welfares(const he::Provider& provider,
                                                   const he::EvalKey& evk,
                                                   const CipherMatrix& purchases,
                                                   std::span<const double> thetas) {
  if (thetas.size() != purchases.cols()) {
    throw InputError("buyer_compute_welfares: one theta per buyer column required");
  }
  CipherMatrix terms(purchases.rows(), purchases.cols());
  std::vector<he::Ciphertext> column(purchases.rows());
  for (std::size_t i = 0; i < purchases.cols(); ++i) {
    for (std::size_t j = 0; j < purchases.rows(); ++j) column[j] = purchases(j, i);
    const auto own = buyer_welfare_terms(provider, evk, column, thetas[i]);
    for (std::size_t j = 0; j < purchases.rows(); ++j) terms(j, i) = own[j];
  }
  return sum_welfare_terms(provider, terms);
}

he::Ciphertext buyer_average_welfare(const he::Provider& provider, const he::EvalKey& evk,
                                     std::span<const he::Ciphertext> enc_states,
                                     std::span<const he::Ciphertext> enc_welfares) {
  if (enc_states.size() != enc_welfares.size()) {
    throw InputError("buyer_average_welfare: states and welfares differ in length");
  }
  std::vector<he::Ciphertext> weighted;
  weighted.reserve(enc_states.size());
  for (std::size_t j = 0; j < enc_states.size(); ++j) {
    weighted.push_back(provider.multiply(evk, enc_states[j], enc_welfares[j]));
  }
  return provider.sum(weighted);
}

std::vector<he::Ciphertext> buyer_update_states(const he::Provider& provider,
                                                const he::EvalKey& evk,
                                                std::span<const he::Ciphertext> enc_states,
                                                std::span<const he::Ciphertext> enc_welfares,
                                                const he::Ciphertext& enc_avg, double eta2) {
  if (enc_states.size() != enc_welfares.size()) {
    throw InputError("buyer_update_states: states and welfares differ in length");
  }
  std::vector<he::Ciphertext> out;
  out.reserve(enc_states.size());
  for (std::size_t j = 0; j < enc_states.size(); ++j) {
    const auto advantage = provider.sub(enc_welfares[j], enc_avg);
    const auto step = provider.multiply_plain(provider.multiply(evk, enc_states[j], advantage), eta2);
    out.push_back(provider.add(enc_states[j], step));
  }
  return out;
}

BuyerContribution BuyerAgent::contribute(const he::Provider& provider, const Msg1& msg1) const {
  BuyerContribution out;
  out.purchases = in_block("block 5 (purchases)", [&] {
    return buyer_compute_purchases(provider, msg1, profile_, index_);
  });
  out.welfare_terms = in_block("block 7 (welfare terms)", [&] {
    return buyer_welfare_terms(provider, msg1.eval_key, out.purchases, profile_.theta);
  });
  return out;
}

Msg2 BuyerAggregator::aggregate(const he::Provider& provider, const Msg1& msg1,
                                std::span<const BuyerContribution> contributions) const {
  const std::size_t num_sellers = msg1.enc_prices.size();
  if (msg1.enc_states.size() != num_sellers) {
    throw InputError("Msg1 carries " + std::to_string(msg1.enc_states.size()) + " states for " +
                     std::to_string(num_sellers) + " prices");
  }
  CipherMatrix purchases(num_sellers, contributions.size());
  CipherMatrix terms(num_sellers, contributions.size());
  for (std::size_t i = 0; i < contributions.size(); ++i) {
    const auto& c = contributions[i];
    if (c.purchases.size() != num_sellers || c.welfare_terms.size() != num_sellers) {
      throw InputError("buyer contribution " + std::to_string(i) + " has wrong length");
    }
    for (std::size_t j = 0; j < num_sellers; ++j) {
      purchases(j, i) = c.purchases[j];
      terms(j, i) = c.welfare_terms[j];
    }
  }
  const auto& evk = msg1.eval_key;
  Msg2 msg2;
  msg2.iteration = msg1.iteration;
  msg2.enc_demands = in_block("block 6 (demands)", [&] {
    return buyer_aggregate_demand(provider, evk, msg1.enc_states, purchases);
  });
  const auto welfares = in_block("block 7 (welfares)", [&] {
    return sum_welfare_terms(provider, terms);
  });
  const auto average = in_block("block 8 (average welfare)", [&] {
    return buyer_average_welfare(provider, evk, msg1.enc_states, welfares);
  });
  msg2.enc_states_next = in_block("block 9 (states)", [&] {
    return buyer_update_states(provider, evk, msg1.enc_states, welfares, average, eta2_);
  });
  return msg2;
}

BuyerSide::BuyerSide(std::vector<market::BuyerProfile> buyers, double eta2) : aggregator_(eta2) {
  agents_.reserve(buyers.size());
  for (std::size_t i = 0; i < buyers.size(); ++i) {
    agents_.emplace_back(std::move(buyers[i]), static_cast<std::uint32_t>(i));
  }
}

Msg2 BuyerSide::respond(const he::Provider& provider, const Msg1& msg1) const {
  std::vector<BuyerContribution> contributions;
  contributions.reserve(agents_.size());
  for (const auto& agent : agents_) contributions.push_back(agent.contribute(provider, msg1));
  return aggregator_.aggregate(provider, msg1, contributions);
}

}  // namespace pfet::protocol
