#include <cmath>

#include <gtest/gtest.h>

#include "fairgen/error.h"
#include "fairgen/metrics.h"
#include "support/test_support.h"

namespace fairgen {
namespace {

double pair_bleu(const Tokens& hyp, const Tokens& ref, int max_n = 4) {
  return bleu({hyp}, std::vector<Tokens>{ref}, max_n).value();
}

TEST(SelfBleu, IdenticalSentencesScoreOne) {
  const std::vector<Tokens> gen(5, Tokens{"the", "same", "words", "here"});
  EXPECT_DOUBLE_EQ(self_bleu(gen).value(), 1.0);
}

TEST(SelfBleu, DisjointPairEqualsPairwiseBleu) {
  const std::vector<Tokens> gen = {{"a", "b", "c"}, {"d", "e"}};
  const double expected = (pair_bleu(gen[0], gen[1]) + pair_bleu(gen[1], gen[0])) / 2.0;
  EXPECT_DOUBLE_EQ(self_bleu(gen).value(), expected);
  EXPECT_EQ(self_bleu(gen).value(), 0.0);
}

TEST(SelfBleu, ThreeSentencesMatchLeaveOneOutComposition) {
  const std::vector<Tokens> gen = {{"a", "b", "c", "d"}, {"a", "b", "x"}, {"b", "c", "d", "a", "b"}};
  double expected = 0.0;
  for (std::size_t i = 0; i < gen.size(); ++i) {
    std::vector<Tokens> others;
    for (std::size_t j = 0; j < gen.size(); ++j)
      if (j != i) others.push_back(gen[j]);
    expected += bleu({gen[i]}, std::vector<std::vector<Tokens>>{others}).value();
  }
  EXPECT_NEAR(self_bleu(gen).value(), expected / 3.0, 1e-12);
}

TEST(SelfBleu, DuplicatesStillFindTheirTwin) {
  const std::vector<Tokens> gen = {{"a", "b"}, {"a", "b"}, {"c", "d"}};
  const double twin = bleu({gen[0]}, std::vector<std::vector<Tokens>>{{gen[1], gen[2]}}).value();
  const double odd = bleu({gen[2]}, std::vector<std::vector<Tokens>>{{gen[0], gen[1]}}).value();
  EXPECT_NEAR(self_bleu(gen).value(), (2 * twin + odd) / 3.0, 1e-12);
}

TEST(SelfBleu, NeedsTwoSentences) {
  EXPECT_THROW(self_bleu({{"a"}}), ArgumentError);
  EXPECT_THROW(self_bleu({{"a"}, {"b"}}, SamplingOptions{1, 0, 1}), ArgumentError);
}

TEST(SelfBleu, SamplingIsSeededAndThreadIndependent) {
  std::vector<Tokens> gen;
  testing::Rng rng(2);
  for (int i = 0; i < 60; ++i) gen.push_back(rng.sentence({"a", "b", "c", "d", "e"}, 9));
  const MetricResult one = self_bleu(gen, {20, 7, 1});
  const MetricResult many = self_bleu(gen, {20, 7, 8});
  EXPECT_EQ(one.value(), many.value());
  EXPECT_EQ(one.hash, many.hash);
  EXPECT_NE(self_bleu(gen, {20, 8, 1}).hash, one.hash);
}

TEST(FbhBleu, SameCorporaGiveEqualDirections) {
  const std::vector<Tokens> corpus = {{"a", "b", "c"}, {"c", "d", "a", "b"}, {"e", "f"}};
  const MetricResult result = fbh_bleu(corpus, corpus);
  EXPECT_DOUBLE_EQ(result.value("forward"), result.value("backward"));
  EXPECT_DOUBLE_EQ(result.value("harmonic"), result.value("forward"));
}

TEST(FbhBleu, TwoSentenceCorporaMatchPerSentenceBleu) {
  const std::vector<Tokens> gen = {{"a", "b", "c", "d"}, {"x", "b", "c"}};
  const std::vector<Tokens> real = {{"a", "b", "c", "e"}, {"b", "c", "x", "y"}};
  const auto against = [](const Tokens& s, const std::vector<Tokens>& pool) {
    return bleu({s}, std::vector<std::vector<Tokens>>{pool}).value();
  };
  const double forward = (against(gen[0], real) + against(gen[1], real)) / 2.0;
  const double backward = (against(real[0], gen) + against(real[1], gen)) / 2.0;
  const MetricResult result = fbh_bleu(gen, real);
  EXPECT_NEAR(result.value("forward"), forward, 1e-12);
  EXPECT_NEAR(result.value("backward"), backward, 1e-12);
  EXPECT_NEAR(result.value("harmonic"), 2 * forward * backward / (forward + backward), 1e-12);
}

TEST(FbhBleu, HashCoversReferencesAndSampling) {
  const std::vector<Tokens> gen = {{"a"}, {"b"}};
  const std::vector<Tokens> real = {{"a"}, {"c"}};
  const HashCode h = fbh_bleu(gen, real).hash;
  EXPECT_EQ(fbh_bleu({{"q"}}, real).hash, h);
  EXPECT_NE(fbh_bleu(gen, {{"a"}}).hash, h);
  EXPECT_NE(fbh_bleu(gen, real, {1000, 999, 0, 0}).hash, h);
  EXPECT_NE(fbh_bleu(gen, real, {1000, 1000, 1, 0}).hash, h);
}

TEST(FbhBleu, ThreadIndependent) {
  std::vector<Tokens> gen, real;
  testing::Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    gen.push_back(rng.sentence({"a", "b", "c", "d"}, 8));
    real.push_back(rng.sentence({"a", "b", "c", "e"}, 8));
  }
  const MetricResult one = fbh_bleu(gen, real, {30, 25, 3, 1});
  const MetricResult many = fbh_bleu(gen, real, {30, 25, 3, 6});
  for (const char* name : {"forward", "backward", "harmonic"}) EXPECT_EQ(one.value(name), many.value(name));
}

TEST(FrPerplexity, SymmetricOnEqualCorpora) {
  const std::vector<Tokens> corpus = {{"a", "b", "c"}, {"b", "c"}, {"c", "a"}};
  const MetricResult result = fr_perplexity(corpus, corpus, 3);
  EXPECT_DOUBLE_EQ(result.value("forward"), result.value("reverse"));
  EXPECT_GE(result.value("forward"), 1.0);
  EXPECT_EQ(result.metric, "fr-perplexity-3");
}

TEST(FrPerplexity, UnseenGeneratedTokensScoreAsUnk) {
  // Order 1 on real [[a]]: E = {a, unk, eos}; counts a:1 eos:1.
  const double d = NGramModel::kDefaultDiscount;
  const double p_unk = d * 2.0 / 2.0 / 3.0;
  const double p_eos = (1 - d) / 2.0 + p_unk;
  const double expected = std::exp(-(2 * std::log(p_unk) + std::log(p_eos)) / 3.0);
  EXPECT_NEAR(fr_perplexity({{"x", "y"}}, {{"a"}}, 1).value("forward"), expected, 1e-12);
}

TEST(FrPerplexity, HashCoversRealTextOrderAndDiscount) {
  const std::vector<Tokens> real = {{"a", "b"}};
  const HashCode h = fr_perplexity({{"a"}}, real).hash;
  EXPECT_EQ(fr_perplexity({{"b", "b"}}, real).hash, h);
  EXPECT_NE(fr_perplexity({{"a"}}, real, 3).hash, h);
  EXPECT_NE(fr_perplexity({{"a"}}, {{"a", "c"}}).hash, h);
  EXPECT_NE(fr_perplexity({{"a"}}, real, NGramModel::kDefaultOrder, 0.5).hash, h);
}

TEST(DistinctN, CountsRepeatedBigrams) {
  EXPECT_NEAR(distinct_n({{"a", "b", "a", "b"}}, 2).value(), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(distinct_n({{"a b a b"}}, 2).value(), 2.0 / 3.0, 1e-12);
}

TEST(DistinctN, AllDistinctIsOne) {
  const MetricResult result = distinct_n({{"a", "b", "c"}, {"d", "e"}}, 2);
  EXPECT_EQ(result.value(), 1.0);
  EXPECT_FALSE(result.degenerate);
}

TEST(DistinctN, NoNgramsIsDegenerateZero) {
  const MetricResult result = distinct_n({{"a"}, {}}, 2);
  EXPECT_EQ(result.value(), 0.0);
  EXPECT_TRUE(result.degenerate);
  EXPECT_TRUE(distinct_n({}, 1).degenerate);
}

TEST(DistinctN, CountsAcrossSentencesNotAcrossBoundaries) {
  // Bigrams: (a b), (a b), (b c) -> 2 distinct out of 3; no (b a) across sentences.
  EXPECT_NEAR(distinct_n({{"a", "b"}, {"a", "b", "c"}}, 2).value(), 2.0 / 3.0, 1e-12);
  EXPECT_THROW(distinct_n({{"a"}}, 0), ArgumentError);
}

}  // namespace
}  // namespace fairgen
