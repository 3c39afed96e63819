#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairgen/corpus.h"
#include "fairgen/hashing.h"
#include "fairgen/metrics.h"
#include "fairgen/report.h"
#include "fairgen/tokenizer.h"
#include "fairgen/vocabulary.h"

namespace fairgen {

enum class MetricKind {
  kPerplexity,          // "perplexity"
  kPerplexityOriginal,  // "perplexity-original"
  kBleu,                // "bleu[:n]"
  kSelfBleu,            // "self-bleu[:n]"
  kFbhBleu,             // "fbh-bleu[:n]"
  kFrPerplexity,        // "fr-ppl[:order]"
  kDistinct,            // "distinct[:n]"
};

struct MetricRequest {
  MetricKind kind = MetricKind::kPerplexity;
  // BLEU order, n-gram model order or distinct-n size; unused for perplexity.
  int parameter = 0;
  bool operator==(const MetricRequest&) const = default;
};

// Parses a comma-separated list such as "perplexity,bleu:4,distinct:2".
// Missing parameters take their defaults. Throws ConfigError.
std::vector<MetricRequest> parse_metric_list(std::string_view text);
std::string to_string(const MetricRequest& request);
bool needs_hypotheses(const MetricRequest& request);
bool needs_scores(const MetricRequest& request);

struct RunConfig {
  Task task = Task::kGen;
  std::filesystem::path corpus_dir;
  TokenizerSpec tokenizer;
  std::size_t t_min = 1;
  std::vector<MetricRequest> metrics;
  std::optional<std::filesystem::path> hypotheses_path;
  std::optional<std::filesystem::path> scores_path;
  std::optional<std::filesystem::path> output_path;
  std::uint64_t seed = 0;
  std::size_t sample_size = kDefaultSampleSize;
  std::size_t reference_sample_size = kDefaultSampleSize;
  unsigned threads = 0;
  std::string model_name;
  std::string timestamp;

  // Throws ConfigError naming the offending field: t_min < 1, an empty or
  // duplicated metric selection, a zero sample size, a referenced path that
  // does not exist, or a selected metric whose input file is not given.
  void validate() const;
};

// Everything the data loader produces for one corpus and setting.
struct LoadedData {
  RawCorpus raw;
  TokenizedCorpus corpus;
  Vocab vocab;
  DataHashes hashes;
};

LoadedData load_data(const std::filesystem::path& corpus_dir, Task task, const TokenizerSpec& spec,
                     std::size_t t_min);

// One hypothesis per line; a trailing newline does not add an empty line.
std::vector<std::string> read_hypotheses(const std::filesystem::path& path);

// In-memory inputs for the metrics; missing ones are read from the paths in
// the config.
struct EvalInputs {
  std::optional<std::vector<std::string>> hypotheses;
  std::optional<TokenScores> scores;
};

// load -> tokenize -> vocab -> hashes -> selected metrics -> report.
// Perplexity runs over the model-tokenized test targets; the BLEU family and
// the diversity metrics over the standardized test targets and hypotheses.
// Writes the report when the config names an output path.
EvalReport evaluate(const RunConfig& config, const EvalInputs& inputs = {});

}  // namespace fairgen
