#include <cmath>

#include <gtest/gtest.h>

#include "fairgen/error.h"
#include "fairgen/metrics.h"
#include "support/test_support.h"

namespace fairgen {
namespace {

// Scores from a context-free model: p(token) for F/specials, p_unk for <unk>.
TokenScores score_with(const std::vector<Tokens>& refs, const std::map<std::string, double>& p,
                       double p_unk, const Vocab& vocab) {
  TokenScores out;
  for (const Tokens& ref : refs) {
    SentenceScores s;
    s.tokens = ref;
    s.tokens.emplace_back(kEosToken);
    for (const auto& token : s.tokens) {
      const bool scored = vocab.is_frequent(token) || vocab.is_special(token);
      s.lp_token.push_back(scored ? std::optional<double>(std::log(p.at(token))) : std::nullopt);
      s.lp_unk.push_back(std::log(p_unk));
    }
    out.push_back(std::move(s));
  }
  return out;
}

TEST(Perplexity, UniformModelGivesFrequentSizePlusOne) {
  const Vocab vocab({"a", "b", "c", "d"}, {}, 1);
  const std::vector<Tokens> refs = {{"a", "b"}, {"c", "d", "a"}, {}};
  const MetricResult result = perplexity(refs, testing::uniform_scores(refs, vocab), vocab);
  EXPECT_NEAR(result.value(), 5.0, 1e-9);
  EXPECT_EQ(result.metric, "perplexity");
}

TEST(Perplexity, RareTokenShareOfUnk) {
  const Vocab vocab({"a"}, {"w", "x", "y", "z"}, 1);
  // p(unk) = 0.2 spread over |R| = 4 gives 0.05 for w; <eos> also gets 0.05.
  const TokenScores scores = score_with({{"w"}}, {{"<eos>", 0.05}}, 0.2, vocab);
  EXPECT_NEAR(perplexity({{"w"}}, scores, vocab).value(), 20.0, 1e-9);
  EXPECT_NEAR(perplexity({{"w"}}, scores, vocab, PerplexityVariant::kOriginal).value(),
              1.0 / std::sqrt(0.2 * 0.05), 1e-9);
}

TEST(Perplexity, LiteralUnkReferenceUsesUnkProbability) {
  const Vocab vocab({"a"}, {}, 1);
  const TokenScores scores = score_with({{"<unk>"}}, {{"<eos>", 0.5}, {"<unk>", 0.25}}, 0.25, vocab);
  EXPECT_NEAR(perplexity({{"<unk>"}}, scores, vocab).value(), 1.0 / std::sqrt(0.125), 1e-9);
}

TEST(Perplexity, FoldingRareMassIntoUnkMatchesFullModel) {
  // True distribution over {a, b, c, d, e} + eos, uniform on the tail {c, d, e}.
  const std::map<std::string, double> truth = {
      {"a", 0.3}, {"b", 0.2}, {"c", 0.1}, {"d", 0.1}, {"e", 0.1}, {"<eos>", 0.2}};
  const std::vector<Tokens> refs = {{"a", "c", "e"}, {"b", "d"}, {"e", "e", "a", "c"}};
  double full = 0.0;
  std::size_t n = 0;
  for (const auto& ref : refs) {
    for (const auto& token : ref) full += std::log(truth.at(token)), ++n;
    full += std::log(truth.at("<eos>")), ++n;
  }
  const double expected = std::exp(-full / static_cast<double>(n));

  const Vocab one({"a", "b"}, {"c", "d", "e"}, 1);
  EXPECT_NEAR(perplexity(refs, score_with(refs, truth, 0.3, one), one).value(), expected, 1e-9);
  const Vocab mid({"a", "b", "c"}, {"d", "e"}, 1);
  EXPECT_NEAR(perplexity(refs, score_with(refs, truth, 0.2, mid), mid).value(), expected, 1e-9);
  const Vocab two({"a", "b", "c", "d", "e"}, {}, 1);
  EXPECT_NEAR(perplexity(refs, score_with(refs, truth, 1e-12, two), two).value(), expected, 1e-9);
}

TEST(Perplexity, HashDependsOnUnionOnly) {
  const std::vector<Tokens> refs = {{"a", "c"}};
  const HashCode split_one = perplexity_hash(refs, Vocab({"a", "b"}, {"c"}, 1));
  const HashCode split_two = perplexity_hash(refs, Vocab({"a"}, {"b", "c"}, 2));
  EXPECT_EQ(split_one, split_two);
  EXPECT_NE(perplexity_hash(refs, Vocab({"a"}, {"b", "c", "d"}, 2)), split_one);
  EXPECT_NE(perplexity_hash({{"a", "c"}, {"a"}}, Vocab({"a", "b"}, {"c"}, 1)), split_one);
  EXPECT_NE(perplexity_hash(refs, Vocab({"a", "b"}, {"c"}, 1), PerplexityVariant::kOriginal),
            perplexity_hash(refs, Vocab({"a"}, {"b", "c"}, 2), PerplexityVariant::kOriginal));
}

TEST(Perplexity, HashIgnoresReferenceOrder) {
  const Vocab vocab({"a", "b"}, {}, 1);
  EXPECT_EQ(perplexity_hash({{"a"}, {"b"}}, vocab), perplexity_hash({{"b"}, {"a"}}, vocab));
}

TEST(Perplexity, RejectsMisalignedScores) {
  const Vocab vocab({"a", "b"}, {"c"}, 1);
  const std::vector<Tokens> refs = {{"a", "b"}};
  TokenScores scores = testing::uniform_scores(refs, vocab);
  EXPECT_THROW(perplexity({{"a", "b"}, {"a"}}, scores, vocab), InputError);
  EXPECT_THROW(perplexity({{"b", "a"}}, scores, vocab), InputError);
  scores[0].lp_token[1].reset();
  EXPECT_THROW(perplexity(refs, scores, vocab), InputError);
  EXPECT_THROW(perplexity({{"z"}}, testing::uniform_scores({{"z"}}, vocab), vocab), InputError);
}

TEST(Perplexity, AtLeastOneForValidDistributions) {
  const Vocab vocab({"a", "b", "c"}, {"d"}, 1);
  const std::vector<Tokens> refs = {{"a", "d"}, {"c"}};
  const std::map<std::string, double> p = {{"a", 0.5}, {"b", 0.2}, {"c", 0.1}, {"<eos>", 0.1}};
  EXPECT_GE(perplexity(refs, score_with(refs, p, 0.1, vocab), vocab).value(), 1.0);
}

}  // namespace
}  // namespace fairgen
