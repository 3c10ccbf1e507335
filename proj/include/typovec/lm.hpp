#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "typovec/chartok.hpp"

namespace typovec {

using TokenSequence = std::vector<TokenId>;

// Autoregressive model over a fixed token vocabulary.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual std::size_t vocab_size() const noexcept = 0;

  // Full-vocabulary distribution for the token following `context`; every
  // entry is strictly positive and the vector sums to 1.
  virtual std::vector<double> next_token_dist(std::span<const TokenId> context) const = 0;

  // Natural log of P(next | context). The default reads next_token_dist.
  virtual double log_prob(std::span<const TokenId> context, TokenId next) const;
};

class UniformLM final : public LanguageModel {
 public:
  explicit UniformLM(std::size_t vocab_size);

  std::size_t vocab_size() const noexcept override { return vocab_size_; }
  std::vector<double> next_token_dist(std::span<const TokenId> context) const override;
  double log_prob(std::span<const TokenId> context, TokenId next) const override;

 private:
  std::size_t vocab_size_;
};

struct NGramConfig {
  std::size_t order = 4;
  double alpha = 0.01;
  // One weight per order 1..n; empty means uniform 1/n.
  std::vector<double> lambdas;
};

// Interpolated additive-smoothing n-gram model:
//
//   P(w | h) = sum_k lambda_k * (c_k(h_k, w) + alpha) / (c_k(h_k) + alpha * |V|)
//
// where h_k is the last k-1 tokens of the history. Histories reaching past
// the start of a sequence are padded with a begin marker whose id equals
// vocab_size(); the marker only ever appears in contexts.
class NGramLM final : public LanguageModel {
 public:
  static NGramLM fit(std::span<const TokenSequence> train, std::size_t vocab_size,
                     const NGramConfig& config = {});

  std::size_t vocab_size() const noexcept override { return vocab_size_; }
  std::vector<double> next_token_dist(std::span<const TokenId> context) const override;
  double log_prob(std::span<const TokenId> context, TokenId next) const override;

  std::size_t order() const noexcept { return order_; }
  double alpha() const noexcept { return alpha_; }
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }
  TokenId bos_id() const noexcept { return static_cast<TokenId>(vocab_size_); }

  // Times `ngram` (context followed by predicted token, 1..order ids, may
  // start with bos_id()) was observed during fit.
  std::uint64_t count(std::span<const TokenId> ngram) const;
  // Times `context` (0..order-1 ids) preceded a prediction.
  std::uint64_t context_count(std::span<const TokenId> context) const;
  // Number of distinct (order, context, token) entries.
  std::size_t num_entries() const noexcept;

  std::string serialize(std::string_view comment = {}) const;
  static NGramLM deserialize(std::string_view text);

 private:
  struct Context {
    std::uint64_t total = 0;
    std::uint32_t begin = 0;  // into tokens_/counts_ of the order table
    std::uint32_t end = 0;
  };
  struct OrderTable {
    std::unordered_map<std::uint64_t, Context> contexts;
    std::vector<TokenId> tokens;  // sorted within each context's range
    std::vector<std::uint64_t> counts;
  };

  NGramLM(std::size_t vocab_size, const NGramConfig& config);

  std::uint64_t pack(std::span<const TokenId> ids) const noexcept;
  // Context for order k (k-1 ids) ending at the end of `history`, padded
  // with bos_id() at the front.
  void history_key(std::span<const TokenId> history, std::size_t k, std::uint64_t& key) const;
  const Context* find(std::size_t k, std::uint64_t key) const;
  std::uint64_t lookup(const OrderTable& table, const Context& ctx, TokenId token) const;
  void freeze(std::vector<std::unordered_map<std::uint64_t,
                                             std::unordered_map<TokenId, std::uint64_t>>>& raw);

  std::size_t vocab_size_;
  std::size_t order_;
  double alpha_;
  std::vector<double> lambdas_;
  unsigned bits_;
  std::vector<OrderTable> tables_;  // index k-1
};

// Mean negative log-likelihood in nats per predicted token over every token
// of every sequence (the first token of a sequence is predicted from an
// empty history). Throws when the evaluation set holds no tokens.
double cross_entropy(const LanguageModel& model, std::span<const TokenSequence> eval);

double perplexity(const LanguageModel& model, std::span<const TokenSequence> eval);

}  // namespace typovec
