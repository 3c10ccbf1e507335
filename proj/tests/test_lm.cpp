#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "typovec/error.hpp"
#include "typovec/lm.hpp"

using namespace typovec;

namespace {

std::vector<TokenSequence> random_corpus(Rng& rng, std::size_t vocab, std::size_t max_tokens) {
  std::vector<TokenSequence> out;
  std::size_t total = 0;
  const std::size_t budget = 1 + rng.below(max_tokens);
  while (total < budget) {
    TokenSequence seq;
    const std::size_t len = 1 + rng.below(40);
    // Skewed draws so that higher orders see repeated contexts.
    for (std::size_t i = 0; i < len && total < budget; ++i, ++total)
      seq.push_back(static_cast<TokenId>(rng.below(1 + rng.below(vocab))));
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace

TEST_CASE("uniform model") {
  const UniformLM u(27);
  const auto d = u.next_token_dist(std::vector<TokenId>{1, 2});
  for (double p : d) CHECK(p == doctest::Approx(1.0 / 27));
  const std::vector<TokenSequence> eval{{1, 2, 3}, {4}};
  CHECK(std::abs(cross_entropy(u, eval) - std::log(27.0)) < 1e-12);
  CHECK(perplexity(u, eval) == doctest::Approx(27.0).epsilon(1e-9));
}

TEST_CASE("unigram counts and hand-computed cross-entropy") {
  // tokens a=0, b=1; "a a b"
  const std::vector<TokenSequence> train{{0, 0, 1}};
  const auto lm = NGramLM::fit(train, 2, {1, 1e-12, {}});
  const auto d = lm.next_token_dist({});
  CHECK(d[0] == doctest::Approx(2.0 / 3));
  CHECK(d[1] == doctest::Approx(1.0 / 3));
  const std::vector<TokenSequence> eval{{0, 1}};
  CHECK(cross_entropy(lm, eval) == doctest::Approx(0.752039).epsilon(1e-6));
  CHECK(perplexity(lm, eval) == doctest::Approx(2.121321).epsilon(1e-6));
}

TEST_CASE("bigram concentrates on the observed successor") {
  const std::vector<TokenSequence> train{{0, 1, 0, 1}};
  const auto lm = NGramLM::fit(train, 3, {2, 0.001, {0.0, 1.0}});
  const auto d = lm.next_token_dist(std::vector<TokenId>{0});
  CHECK(d[1] > 0.99);
}

TEST_CASE("large alpha tends to uniform") {
  const std::vector<TokenSequence> train{{0, 1, 2, 0, 1, 2, 2, 2}};
  const auto lm = NGramLM::fit(train, 5, {4, 1e9, {}});
  for (double p : lm.next_token_dist(std::vector<TokenId>{2, 2})) CHECK(p == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("fit rejects bad input") {
  CHECK_THROWS_AS(NGramLM::fit({}, 3), Error);
  const std::vector<TokenSequence> empty_seqs{{}, {}};
  CHECK_THROWS_AS(NGramLM::fit(empty_seqs, 3), Error);
  const std::vector<TokenSequence> out_of_range{{0, 5}};
  CHECK_THROWS_AS(NGramLM::fit(out_of_range, 3), Error);
  const std::vector<TokenSequence> ok{{0, 1}};
  CHECK_THROWS_AS(NGramLM::fit(ok, 3, {4, 0.0, {}}), Error);
  CHECK_THROWS_AS(NGramLM::fit(ok, 3, {2, 0.1, {0.5}}), Error);
  const std::vector<TokenSequence> none;
  CHECK_THROWS_AS(cross_entropy(UniformLM(3), none), Error);
}

TEST_CASE("distributions are normalized and strictly positive") {
  Rng rng(17);
  const auto train = random_corpus(rng, 30, 3000);
  const auto lm = NGramLM::fit(train, 30);
  for (int i = 0; i < 1000; ++i) {
    TokenSequence ctx;
    const auto len = rng.below(6);
    for (std::size_t j = 0; j < len; ++j) ctx.push_back(static_cast<TokenId>(rng.below(30)));
    const auto d = lm.next_token_dist(ctx);
    REQUIRE(d.size() == 30);
    double sum = 0.0;
    for (double p : d) {
      REQUIRE(p > 0.0);
      sum += p;
    }
    REQUIRE(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("stored counts equal brute-force recounts") {
  Rng rng(23);
  const std::size_t vocab = 12;
  const auto train = random_corpus(rng, vocab, 2000);
  const auto lm = NGramLM::fit(train, vocab);
  const oracle::NaiveNGram ref(train, vocab, 4, 0.01);
  for (std::size_t k = 1; k <= 4; ++k) {
    for (const auto& [key, count] : ref.joint[k - 1]) {
      std::vector<TokenId> ids(key.begin(), key.end());
      REQUIRE(lm.count(ids) == static_cast<std::uint64_t>(count));
    }
    for (const auto& [key, count] : ref.context[k - 1]) {
      std::vector<TokenId> ids(key.begin(), key.end());
      REQUIRE(lm.context_count(ids) == static_cast<std::uint64_t>(count));
    }
  }
  std::size_t entries = 0;
  for (const auto& m : ref.joint) entries += m.size();
  CHECK(lm.num_entries() == entries);
  CHECK(lm.count(std::vector<TokenId>{11, 11, 11, 11}) == 0);
}

TEST_CASE("cross-entropy matches the naive summation oracle") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t vocab = 2 + rng.below(40);
    const std::size_t order = 1 + rng.below(5);
    const auto train = random_corpus(rng, vocab, 3000);
    const auto eval = random_corpus(rng, vocab, 1000);
    std::vector<double> lambdas;
    if (trial % 2) {
      for (std::size_t k = 0; k < order; ++k) lambdas.push_back(rng.uniform() + 0.01);
      const double s = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
      for (double& l : lambdas) l /= s;
    }
    const double alpha = trial % 3 == 0 ? 0.5 : 0.01;
    const auto lm = NGramLM::fit(train, vocab, {order, alpha, lambdas});
    const oracle::NaiveNGram ref(train, vocab, order, alpha, lambdas);
    CHECK(std::abs(cross_entropy(lm, eval) - ref.cross_entropy(eval)) < 1e-9);
  }
}

TEST_CASE("serialization round trip preserves every probability") {
  Rng rng(31);
  const auto train = random_corpus(rng, 20, 1500);
  const auto lm = NGramLM::fit(train, 20, {3, 0.05, {0.2, 0.3, 0.5}});
  const std::string text = lm.serialize("typovec config=beef");
  const auto back = NGramLM::deserialize(text);
  CHECK(back.serialize("typovec config=beef") == text);
  const auto eval = random_corpus(rng, 20, 500);
  CHECK(cross_entropy(back, eval) == cross_entropy(lm, eval));
  CHECK_THROWS_AS(NGramLM::deserialize("typovec-ngram 99\n"), Error);
}

TEST_CASE("model fit on one source prefers held-out text from that source") {
  // Two deterministic-ish cycles over disjoint preferences.
  Rng rng(37);
  auto sample = [&](int shift, std::size_t n) {
    TokenSequence seq;
    TokenId prev = 0;
    for (std::size_t i = 0; i < n; ++i) {
      prev = rng.uniform() < 0.8 ? static_cast<TokenId>((prev + shift) % 6) : static_cast<TokenId>(rng.below(6));
      seq.push_back(prev);
    }
    return std::vector<TokenSequence>{seq};
  };
  const auto lm_a = NGramLM::fit(sample(1, 5000), 6);
  const double on_a = cross_entropy(lm_a, sample(1, 2000));
  const double on_b = cross_entropy(lm_a, sample(5, 2000));
  CHECK(on_a < on_b);
}
