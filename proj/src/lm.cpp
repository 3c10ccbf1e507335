#include "typovec/lm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "typovec/error.hpp"
#include "typovec/io.hpp"

namespace typovec {

double LanguageModel::log_prob(std::span<const TokenId> context, TokenId next) const {
  return std::log(next_token_dist(context).at(next));
}

UniformLM::UniformLM(std::size_t vocab_size) : vocab_size_(vocab_size) {
  if (vocab_size == 0) throw Error(Errc::invalid_argument, "uniform model needs a nonempty vocabulary");
}

std::vector<double> UniformLM::next_token_dist(std::span<const TokenId>) const {
  return std::vector<double>(vocab_size_, 1.0 / static_cast<double>(vocab_size_));
}

double UniformLM::log_prob(std::span<const TokenId>, TokenId next) const {
  if (next >= vocab_size_) throw Error(Errc::invalid_argument, "token id out of range");
  return -std::log(static_cast<double>(vocab_size_));
}

NGramLM::NGramLM(std::size_t vocab_size, const NGramConfig& config)
    : vocab_size_(vocab_size), order_(config.order), alpha_(config.alpha) {
  if (vocab_size_ == 0) throw Error(Errc::invalid_argument, "n-gram model needs a nonempty vocabulary");
  if (order_ == 0) throw Error(Errc::invalid_argument, "n-gram order must be >= 1");
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
    throw Error(Errc::invalid_argument, "additive smoothing alpha must be > 0");
  }
  // ids 0..vocab_size, the top one being the begin marker
  bits_ = static_cast<unsigned>(std::bit_width(vocab_size_));
  if ((order_ - 1) * bits_ > 64) {
    throw Error(Errc::invalid_argument, "n-gram order " + std::to_string(order_) +
                                            " too large for a vocabulary of " +
                                            std::to_string(vocab_size_));
  }
  if (config.lambdas.empty()) {
    lambdas_.assign(order_, 1.0 / static_cast<double>(order_));
  } else {
    if (config.lambdas.size() != order_) {
      throw Error(Errc::invalid_argument, "need exactly one interpolation weight per order");
    }
    double sum = 0.0;
    for (double l : config.lambdas) {
      if (!(l >= 0.0)) throw Error(Errc::invalid_argument, "interpolation weights must be >= 0");
      sum += l;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw Error(Errc::invalid_argument, "interpolation weights must sum to 1");
    lambdas_ = config.lambdas;
  }
  tables_.resize(order_);
}

std::uint64_t NGramLM::pack(std::span<const TokenId> ids) const noexcept {
  std::uint64_t key = 0;
  for (TokenId id : ids) key = (bits_ == 64 ? 0 : key << bits_) | id;
  return key;
}

void NGramLM::history_key(std::span<const TokenId> history, std::size_t k,
                          std::uint64_t& key) const {
  key = 0;
  const std::size_t need = k - 1;
  for (std::size_t i = 0; i < need; ++i) {
    // position counted back from the end of the history
    const std::size_t back = need - i;
    const TokenId id = back <= history.size() ? history[history.size() - back] : bos_id();
    key = (key << bits_) | id;
  }
}

NGramLM NGramLM::fit(std::span<const TokenSequence> train, std::size_t vocab_size,
                     const NGramConfig& config) {
  NGramLM model(vocab_size, config);
  std::vector<std::unordered_map<std::uint64_t, std::unordered_map<TokenId, std::uint64_t>>> raw(
      model.order_);
  std::size_t total = 0;
  for (const TokenSequence& seq : train) {
    for (std::size_t t = 0; t < seq.size(); ++t) {
      const TokenId token = seq[t];
      if (token >= vocab_size) {
        throw Error(Errc::invalid_argument, "training token id " + std::to_string(token) +
                                                " outside vocabulary of " +
                                                std::to_string(vocab_size));
      }
      const std::span<const TokenId> history(seq.data(), t);
      for (std::size_t k = 1; k <= model.order_; ++k) {
        std::uint64_t key = 0;
        model.history_key(history, k, key);
        ++raw[k - 1][key][token];
      }
      ++total;
    }
  }
  if (total == 0) throw Error(Errc::empty_input, "cannot fit a language model on empty training data");
  model.freeze(raw);
  return model;
}

void NGramLM::freeze(
    std::vector<std::unordered_map<std::uint64_t, std::unordered_map<TokenId, std::uint64_t>>>&
        raw) {
  for (std::size_t k = 0; k < order_; ++k) {
    OrderTable& table = tables_[k];
    table.contexts.reserve(raw[k].size());
    // Deterministic layout regardless of hash iteration order.
    std::vector<std::uint64_t> keys;
    keys.reserve(raw[k].size());
    for (const auto& [key, _] : raw[k]) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    for (std::uint64_t key : keys) {
      auto& followers = raw[k][key];
      std::vector<std::pair<TokenId, std::uint64_t>> sorted(followers.begin(), followers.end());
      std::sort(sorted.begin(), sorted.end());
      Context ctx;
      ctx.begin = static_cast<std::uint32_t>(table.tokens.size());
      for (const auto& [token, n] : sorted) {
        table.tokens.push_back(token);
        table.counts.push_back(n);
        ctx.total += n;
      }
      ctx.end = static_cast<std::uint32_t>(table.tokens.size());
      table.contexts.emplace(key, ctx);
    }
    raw[k].clear();
  }
}

const NGramLM::Context* NGramLM::find(std::size_t k, std::uint64_t key) const {
  const auto& contexts = tables_[k - 1].contexts;
  const auto it = contexts.find(key);
  return it == contexts.end() ? nullptr : &it->second;
}

std::uint64_t NGramLM::lookup(const OrderTable& table, const Context& ctx, TokenId token) const {
  const auto first = table.tokens.begin() + ctx.begin;
  const auto last = table.tokens.begin() + ctx.end;
  const auto it = std::lower_bound(first, last, token);
  if (it == last || *it != token) return 0;
  return table.counts[static_cast<std::size_t>(it - table.tokens.begin())];
}

std::vector<double> NGramLM::next_token_dist(std::span<const TokenId> context) const {
  const double v = static_cast<double>(vocab_size_);
  std::vector<double> dist(vocab_size_, 0.0);
  for (std::size_t k = 1; k <= order_; ++k) {
    std::uint64_t key = 0;
    history_key(context, k, key);
    const Context* ctx = find(k, key);
    const double total = ctx ? static_cast<double>(ctx->total) : 0.0;
    const double denom = total + alpha_ * v;
    const double base = lambdas_[k - 1] * alpha_ / denom;
    for (double& p : dist) p += base;
    if (ctx) {
      const OrderTable& table = tables_[k - 1];
      const double scale = lambdas_[k - 1] / denom;
      for (std::uint32_t i = ctx->begin; i < ctx->end; ++i) {
        dist[table.tokens[i]] += scale * static_cast<double>(table.counts[i]);
      }
    }
  }
  return dist;
}

double NGramLM::log_prob(std::span<const TokenId> context, TokenId next) const {
  if (next >= vocab_size_) throw Error(Errc::invalid_argument, "token id out of range");
  const double v = static_cast<double>(vocab_size_);
  double p = 0.0;
  for (std::size_t k = 1; k <= order_; ++k) {
    std::uint64_t key = 0;
    history_key(context, k, key);
    const Context* ctx = find(k, key);
    double c = 0.0;
    double total = 0.0;
    if (ctx) {
      c = static_cast<double>(lookup(tables_[k - 1], *ctx, next));
      total = static_cast<double>(ctx->total);
    }
    p += lambdas_[k - 1] * (c + alpha_) / (total + alpha_ * v);
  }
  return std::log(p);
}

std::uint64_t NGramLM::count(std::span<const TokenId> ngram) const {
  if (ngram.empty() || ngram.size() > order_) return 0;
  const Context* ctx = find(ngram.size(), pack(ngram.first(ngram.size() - 1)));
  return ctx ? lookup(tables_[ngram.size() - 1], *ctx, ngram.back()) : 0;
}

std::uint64_t NGramLM::context_count(std::span<const TokenId> context) const {
  if (context.size() >= order_) return 0;
  const Context* ctx = find(context.size() + 1, pack(context));
  return ctx ? ctx->total : 0;
}

std::size_t NGramLM::num_entries() const noexcept {
  std::size_t n = 0;
  for (const OrderTable& table : tables_) n += table.tokens.size();
  return n;
}

// Text count-table format, version 1:
//   typovec-ngram 1 [comment]
//   order <n>
//   alpha <a>
//   vocab <|V|>
//   lambdas <l1> ... <ln>
//   <k>\t<context ids, space separated>\t<token>\t<count>   (one per entry)
std::string NGramLM::serialize(std::string_view comment) const {
  std::string out = "typovec-ngram 1";
  if (!comment.empty()) {
    out.push_back(' ');
    out += comment;
  }
  out += "\norder " + std::to_string(order_) + "\nalpha " + io::format_exact(alpha_) +
         "\nvocab " + std::to_string(vocab_size_) + "\nlambdas";
  for (double l : lambdas_) out += " " + io::format_exact(l);
  out.push_back('\n');
  for (std::size_t k = 1; k <= order_; ++k) {
    const OrderTable& table = tables_[k - 1];
    std::vector<std::uint64_t> keys;
    for (const auto& [key, _] : table.contexts) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    for (std::uint64_t key : keys) {
      const Context& ctx = table.contexts.at(key);
      std::string ctx_text;
      for (std::size_t i = 0; i + 1 < k; ++i) {
        const std::size_t shift = bits_ * (k - 2 - i);
        const auto id = (key >> shift) & ((std::uint64_t{1} << bits_) - 1);
        if (i) ctx_text.push_back(' ');
        ctx_text += std::to_string(id);
      }
      for (std::uint32_t i = ctx.begin; i < ctx.end; ++i) {
        out += std::to_string(k) + '\t' + ctx_text + '\t' + std::to_string(table.tokens[i]) +
               '\t' + std::to_string(table.counts[i]) + '\n';
      }
    }
  }
  return out;
}

NGramLM NGramLM::deserialize(std::string_view text) {
  const auto lines = io::lines(text);
  if (lines.size() < 5 || !lines[0].starts_with("typovec-ngram 1")) {
    throw Error(Errc::parse, "not a typovec-ngram v1 file");
  }
  const auto value = [&](std::size_t i, std::string_view key) {
    if (!lines[i].starts_with(key)) throw Error(Errc::parse, "n-gram header missing " + std::string(key));
    return lines[i].substr(key.size());
  };
  NGramConfig config;
  config.order = io::parse_uint(value(1, "order "));
  config.alpha = io::parse_double(value(2, "alpha "));
  const std::size_t vocab = io::parse_uint(value(3, "vocab "));
  for (std::string_view l : io::split(io::trim(value(4, "lambdas")), ' ')) {
    config.lambdas.push_back(io::parse_double(l));
  }
  NGramLM model(vocab, config);
  std::vector<std::unordered_map<std::uint64_t, std::unordered_map<TokenId, std::uint64_t>>> raw(
      model.order_);
  for (std::size_t i = 5; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = io::split(lines[i], '\t');
    if (fields.size() != 4) throw Error(Errc::parse, "bad n-gram entry on line " + std::to_string(i + 1));
    const std::size_t k = io::parse_uint(fields[0]);
    if (k == 0 || k > model.order_) throw Error(Errc::parse, "n-gram order out of range on line " + std::to_string(i + 1));
    std::vector<TokenId> ctx;
    if (!fields[1].empty()) {
      for (std::string_view id : io::split(fields[1], ' ')) {
        const auto v = io::parse_uint(id);
        if (v > vocab) throw Error(Errc::parse, "context id out of range on line " + std::to_string(i + 1));
        ctx.push_back(static_cast<TokenId>(v));
      }
    }
    const auto token = io::parse_uint(fields[2]);
    if (ctx.size() != k - 1 || token >= vocab) {
      throw Error(Errc::parse, "malformed n-gram entry on line " + std::to_string(i + 1));
    }
    raw[k - 1][model.pack(ctx)][static_cast<TokenId>(token)] += io::parse_uint(fields[3]);
  }
  model.freeze(raw);
  return model;
}

double cross_entropy(const LanguageModel& model, std::span<const TokenSequence> eval) {
  double nll = 0.0;
  std::size_t tokens = 0;
  for (const TokenSequence& seq : eval) {
    for (std::size_t t = 0; t < seq.size(); ++t) {
      nll -= model.log_prob(std::span<const TokenId>(seq.data(), t), seq[t]);
    }
    tokens += seq.size();
  }
  if (tokens == 0) throw Error(Errc::empty_input, "cross-entropy needs a nonempty evaluation set");
  const double ce = nll / static_cast<double>(tokens);
  if (!std::isfinite(ce)) throw Error(Errc::numeric, "cross-entropy is not finite");
  return ce;
}

double perplexity(const LanguageModel& model, std::span<const TokenSequence> eval) {
  return std::exp(cross_entropy(model, eval));
}

}  // namespace typovec
