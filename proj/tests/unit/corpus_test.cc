#include "fairgen/corpus.h"

#include <gtest/gtest.h>

#include "fairgen/error.h"
#include "support/test_support.h"

namespace fairgen {
namespace {

using testing::TempDir;
using testing::write_file;

TEST(LoadRaw, GenCountsLines) {
  const TempDir dir("corpus");
  write_file(dir / "train.txt", "one\ntwo\nthree\n");
  write_file(dir / "test.txt", "four\n");
  const RawCorpus raw = load_raw(dir.path(), Task::kGen);
  EXPECT_EQ(raw.split("train").size(), 3u);
  EXPECT_EQ(raw.split("test").size(), 1u);
  EXPECT_FALSE(raw.splits.contains("dev"));
  EXPECT_THROW(raw.split("dev"), ArgumentError);
}

TEST(LoadRaw, MissingRequiredSplitIsLoadError) {
  const TempDir dir("corpus");
  write_file(dir / "train.txt", "one\n");
  EXPECT_THROW(load_raw(dir.path(), Task::kGen), LoadError);
}

TEST(LoadRaw, EmptyDevSplitIsAllowed) {
  const TempDir dir("corpus");
  write_file(dir / "train.txt", "a b\n");
  write_file(dir / "dev.txt", "");
  write_file(dir / "test.txt", "c\n");
  const RawCorpus raw = load_raw(dir.path(), Task::kGen);
  EXPECT_TRUE(raw.split("dev").empty());
  const TokenizedCorpus corpus = tokenize_corpus(raw, TokenizerSpec::standard_word());
  EXPECT_TRUE(corpus.split("dev").empty());
}

TEST(ParseSplit, SingleTurnPair) {
  const auto samples = parse_split(Task::kSingleTurn, "hi\thello\n", "x");
  ASSERT_EQ(samples.size(), 1u);
  EXPECT_EQ(samples[0], (RawSample{"hi", "hello"}));
}

TEST(ParseSplit, SingleTurnRejectsMalformedLines) {
  EXPECT_THROW(parse_split(Task::kSingleTurn, "no tab here\n", "x"), ParseError);
  EXPECT_THROW(parse_split(Task::kSingleTurn, "a\tb\tc\n", "x"), ParseError);
  EXPECT_THROW(parse_split(Task::kSingleTurn, "a\t  \n", "x"), ParseError);
}

TEST(ParseSplit, MultiTurnSessions) {
  const auto samples = parse_split(Task::kMultiTurn, "a\nb\n\nc\nd\ne", "x");
  ASSERT_EQ(samples.size(), 2u);
  EXPECT_EQ(samples[0], (RawSample{"a", "b"}));
  EXPECT_EQ(samples[1], (RawSample{"c", "d", "e"}));
}

TEST(ParseSplit, MultiTurnCollapsesRepeatedBlankLines) {
  const auto samples = parse_split(Task::kMultiTurn, "\na\n\n\n  \nb\n", "x");
  ASSERT_EQ(samples.size(), 2u);
}

TEST(ParseSplit, ErrorsNameFileAndLine) {
  try {
    parse_split(Task::kGen, "ok\n\nok\n", "train.txt");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("train.txt:2"), std::string::npos) << e.what();
  }
}

TEST(ParseSplit, CarriageReturnIsRejected) {
  EXPECT_THROW(parse_split(Task::kGen, "a\r\nb\n", "x"), ParseError);
}

TEST(Task, ParseAndPrint) {
  for (Task task : {Task::kGen, Task::kSingleTurn, Task::kMultiTurn})
    EXPECT_EQ(parse_task(to_string(task)), task);
  EXPECT_THROW(parse_task("dialogue"), ConfigError);
}

TEST(SerializeRawSample, MatchesFileLayout) {
  EXPECT_EQ(serialize_raw_sample(Task::kSingleTurn, {"hi", "hello"}), "hi\thello");
  EXPECT_EQ(serialize_raw_sample(Task::kMultiTurn, {"a", "b"}), "a\nb");
  EXPECT_EQ(serialize_raw_sample(Task::kGen, {"a b"}), "a b");
}

TEST(TokenizeCorpus, OneLineGen) {
  RawCorpus raw;
  raw.task = Task::kGen;
  raw.splits["train"] = {{"a b"}};
  raw.splits["test"] = {};
  const TokenizedCorpus corpus = tokenize_corpus(raw, TokenizerSpec::standard_word());
  ASSERT_EQ(corpus.split("train").size(), 1u);
  EXPECT_EQ(corpus.split("train")[0], (TokenizedSample{{"a", "b"}}));
  EXPECT_EQ(corpus.tokenizer_spec, TokenizerSpec::standard_word());
}

TEST(TokenizeCorpus, PreservesSampleCountsPerSplit) {
  const RawCorpus raw = load_raw(testing::fixture_path("dialog"), Task::kSingleTurn);
  const TokenizedCorpus corpus = tokenize_corpus(raw, TokenizerSpec::standard_word());
  for (const auto& [name, samples] : raw.splits) EXPECT_EQ(corpus.split(name).size(), samples.size());
}

TEST(TargetSentences, LastFieldOfEachSample) {
  RawCorpus raw;
  raw.task = Task::kMultiTurn;
  raw.splits["train"] = {{"a", "b", "c"}, {"d", "e"}};
  raw.splits["test"] = {};
  const TokenizedCorpus corpus = tokenize_corpus(raw, TokenizerSpec::standard_word());
  EXPECT_EQ(target_sentences(corpus, "train"), (std::vector<Tokens>{{"c"}, {"e"}}));
}

}  // namespace
}  // namespace fairgen
