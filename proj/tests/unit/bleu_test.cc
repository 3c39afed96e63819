#include <gtest/gtest.h>

#include "fairgen/error.h"
#include "fairgen/metrics.h"
#include "oracles/bleu_oracle.h"
#include "support/test_support.h"

namespace fairgen {
namespace {

using testing::kRealWordHypothesis;
using testing::kUnkEchoHypothesis;
using testing::kUnkReference;

TEST(Bleu, IdentityScoresOne) {
  const MetricResult result = bleu({{"a", "b", "c", "d"}}, std::vector<Tokens>{{"a", "b", "c", "d"}});
  EXPECT_DOUBLE_EQ(result.value(), 1.0);
  EXPECT_EQ(result.metric, "bleu-4");
  EXPECT_EQ(result.n, 4);
}

TEST(Bleu, UnkNeverMatches) {
  const MetricResult result =
      bleu({{"a", "<unk>"}}, std::vector<Tokens>{{"a", "<unk>"}}, 1);
  EXPECT_DOUBLE_EQ(result.value(), 0.5);
}

TEST(Bleu, UnkEchoDoesNotBeatRealWords) {
  const std::vector<Tokens> refs = {kUnkReference};
  const double echo = bleu({kUnkEchoHypothesis}, refs, 3).value();
  const double real = bleu({kRealWordHypothesis}, refs, 3).value();
  EXPECT_GE(real, echo);
  // Treating <unk> as an ordinary word flips the order.
  EXPECT_GT(oracle::corpus_bleu({kUnkEchoHypothesis}, refs, 3),
            oracle::corpus_bleu({kRealWordHypothesis}, refs, 3));
}

TEST(Bleu, MatchesTextbookOracleOnRandomCorpora) {
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e", "f"};
  testing::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t count = 1 + rng.below(10);
    std::vector<Tokens> hyps, refs;
    for (std::size_t i = 0; i < count; ++i) {
      hyps.push_back(rng.sentence(alphabet, 12));
      refs.push_back(rng.sentence(alphabet, 12));
    }
    if (hyps[0].empty()) hyps[0].push_back("a");
    const int max_n = 1 + static_cast<int>(rng.below(4));
    EXPECT_NEAR(bleu(hyps, refs, max_n).value(), oracle::corpus_bleu(hyps, refs, max_n), 1e-9)
        << "trial " << trial;
  }
}

TEST(Bleu, BrevityPenaltyUsesClosestReference) {
  // Hypothesis length 2; references of length 3 and 5: r = 3.
  const std::vector<std::vector<Tokens>> refs = {{{"a", "b", "x"}, {"a", "b", "y", "z", "w"}}};
  EXPECT_NEAR(bleu({{"a", "b"}}, refs, 1).value(), std::exp(1.0 - 3.0 / 2.0), 1e-12);
  // Equidistant references of length 1 and 3 around length 2: the shorter wins, no penalty.
  const std::vector<std::vector<Tokens>> tie = {{{"a"}, {"a", "b", "c"}}};
  EXPECT_NEAR(bleu({{"a", "b"}}, tie, 1).value(), 1.0, 1e-12);
}

TEST(Bleu, ClipsAgainstBestReference) {
  const std::vector<std::vector<Tokens>> refs = {{{"a", "x"}, {"a", "a"}}};
  EXPECT_NEAR(bleu({{"a", "a"}}, refs, 1).value(), 1.0, 1e-12);
}

TEST(Bleu, ZeroUnigramMatchesOrEmptyHypothesesGiveZero) {
  EXPECT_EQ(bleu({{"x", "y"}}, std::vector<Tokens>{{"a", "b"}}).value(), 0.0);
  EXPECT_EQ(bleu(std::vector<Tokens>{Tokens{}}, std::vector<Tokens>{{"a", "b"}}).value(), 0.0);
}

TEST(Bleu, RetokenizesBothSides) {
  const double split = bleu({{"hello", ",", "world", "!"}}, std::vector<Tokens>{{"Hello,", "world!"}}).value();
  EXPECT_DOUBLE_EQ(split, 1.0);
}

TEST(Bleu, HashCoversReferencesOnly) {
  const std::vector<Tokens> refs = {{"a", "b"}, {"c"}};
  const HashCode h = bleu({{"a"}, {"c"}}, refs).hash;
  EXPECT_EQ(bleu({{"q"}, {"r"}}, refs).hash, h);
  EXPECT_EQ(bleu({{"a"}, {"c"}}, std::vector<Tokens>{{"A", "B"}, {"C"}}).hash, h);
  EXPECT_EQ(bleu_hash({{{"c"}}, {{"a", "b"}}}), h);
  EXPECT_NE(bleu({{"a"}, {"c"}}, std::vector<Tokens>{{"a", "b"}, {"d"}}).hash, h);
}

TEST(Bleu, RejectsBadArguments) {
  EXPECT_THROW(bleu({}, std::vector<Tokens>{}), ArgumentError);
  EXPECT_THROW(bleu({{"a"}}, std::vector<Tokens>{{"a"}, {"b"}}), ArgumentError);
  EXPECT_THROW(bleu({{"a"}}, std::vector<Tokens>{{"a"}}, 0), ArgumentError);
  EXPECT_THROW(bleu({{"a"}}, std::vector<std::vector<Tokens>>{{}}), ArgumentError);
}

TEST(Bleu, StaysInUnitInterval) {
  const std::vector<std::string> alphabet = {"a", "b", "<unk>", "c"};
  testing::Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<Tokens> hyps = {rng.sentence(alphabet, 8), rng.sentence(alphabet, 8)};
    const std::vector<Tokens> refs = {rng.sentence(alphabet, 8), rng.sentence(alphabet, 8)};
    const double value = bleu(hyps, refs).value();
    EXPECT_GE(value, 0.0);
    EXPECT_LE(value, 1.0);
  }
}

}  // namespace
}  // namespace fairgen
