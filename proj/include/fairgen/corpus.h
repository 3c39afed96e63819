#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fairgen/tokenizer.h"

namespace fairgen {

// Input -> Output shape of a dataset: no input (gen), post -> response
// (single-turn), utterance context -> response (multi-turn).
enum class Task { kGen, kSingleTurn, kMultiTurn };

std::string_view to_string(Task task);
// Accepts "gen", "single-turn", "multi-turn".
Task parse_task(std::string_view name);

// Sentence fields of one sample: one sentence (gen), post and response
// (single-turn), or the utterances of a session (multi-turn).
using RawSample = std::vector<std::string>;
using TokenizedSample = std::vector<Tokens>;

inline constexpr std::string_view kTrainSplit = "train";
inline constexpr std::string_view kDevSplit = "dev";
inline constexpr std::string_view kTestSplit = "test";

struct RawCorpus {
  Task task = Task::kGen;
  std::map<std::string, std::vector<RawSample>, std::less<>> splits;

  const std::vector<RawSample>& split(std::string_view name) const;
};

struct TokenizedCorpus {
  Task task = Task::kGen;
  std::map<std::string, std::vector<TokenizedSample>, std::less<>> splits;
  TokenizerSpec tokenizer_spec;

  const std::vector<TokenizedSample>& split(std::string_view name) const;
};

// Reads <dir>/train.txt and <dir>/test.txt (and <dir>/dev.txt when present).
// File formats, UTF-8 with "\n" line endings:
//   gen          one sentence per line
//   single-turn  "post<TAB>response" per line
//   multi-turn   one utterance per line, sessions separated by blank lines
// Throws LoadError for a missing/unreadable file, ParseError (with file and
// line number) for malformed content.
RawCorpus load_raw(const std::filesystem::path& dir, Task task);

// Parses the contents of one split file. `label` names the source in errors.
std::vector<RawSample> parse_split(Task task, std::string_view contents, std::string_view label);

// The on-disk byte form of a sample (fields joined by TAB or "\n").
std::string serialize_raw_sample(Task task, const RawSample& sample);

TokenizedCorpus tokenize_corpus(const RawCorpus& raw, const Tokenizer& tokenizer);
TokenizedCorpus tokenize_corpus(const RawCorpus& raw, const TokenizerSpec& spec);

// Output-side sentence of a sample: the sentence (gen), the response
// (single-turn), the last utterance (multi-turn). All are the last field.
inline const Tokens& target_sentence(const TokenizedSample& sample) { return sample.back(); }

// Target sentences of one split, in sample order.
std::vector<Tokens> target_sentences(const TokenizedCorpus& corpus, std::string_view split);

}  // namespace fairgen
