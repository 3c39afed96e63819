#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairgen/hash_code.h"
#include "fairgen/ngram_lm.h"
#include "fairgen/tokenizer.h"
#include "fairgen/vocabulary.h"

namespace fairgen {

// One metric value (or a few named values) with its comparability hash. Two
// results with the same metric name are comparable iff their hashes match.
struct MetricResult {
  std::string metric;
  std::vector<std::pair<std::string, double>> values;
  HashCode hash;
  std::optional<int> n;
  // Set when the value is a convention for a degenerate input (e.g.
  // distinct-n over zero n-grams).
  bool degenerate = false;

  // Throws ArgumentError if no value carries this name.
  double value(std::string_view name = "value") const;
};

// ---------------------------------------------------------------------------
// Model scores for reference text.
//
// One record per reference sentence. `tokens` is the reference sentence
// followed by "<eos>". At every position lp_unk = log p(<unk> | prefix);
// lp_token = log p(token | prefix) wherever the token belongs to F or the
// specials (null otherwise). Natural logs, all <= 0.
struct SentenceScores {
  Tokens tokens;
  std::vector<std::optional<double>> lp_token;
  std::vector<double> lp_unk;

  bool operator==(const SentenceScores&) const = default;
};
using TokenScores = std::vector<SentenceScores>;

// Line-delimited JSON, one {"tokens": [...], "lp_token": [...], "lp_unk": [...]}
// object per line. Parse errors carry the line number.
std::string serialize_token_scores(const TokenScores& scores);
TokenScores parse_token_scores(std::string_view contents, std::string_view label);
TokenScores read_token_scores(const std::filesystem::path& path);
void write_token_scores(const TokenScores& scores, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Perplexity over reference sentences.
//
// kUnkRedistributed spreads p(<unk>) evenly over the rare list: a token of R
// scores log(p(<unk>) / |R|). The result then only depends on F + R as a set,
// and so does the hash (references + the sorted set F + R).
//
// kOriginal scores a rare token as log p(<unk>); it is only comparable for
// identical F, so its hash covers F and R separately.
//
// Every position counts, including the final <eos>; padding never appears.
enum class PerplexityVariant { kUnkRedistributed, kOriginal };

MetricResult perplexity(const std::vector<Tokens>& references, const TokenScores& scores,
                        const Vocab& vocab,
                        PerplexityVariant variant = PerplexityVariant::kUnkRedistributed);
HashCode perplexity_hash(const std::vector<Tokens>& references, const Vocab& vocab,
                         PerplexityVariant variant = PerplexityVariant::kUnkRedistributed);

// ---------------------------------------------------------------------------
// BLEU family. Every input sentence first goes through standard_retokenize().
// Any n-gram containing "<unk>" never matches: on the hypothesis side it still
// counts in the precision denominator, on the reference side it is dropped.
// Higher-order precisions with zero matches are smoothed to 1/(total + 1).
inline constexpr int kDefaultBleuOrder = 4;
inline constexpr std::size_t kDefaultSampleSize = 1000;

// Corpus BLEU, one or more references per hypothesis. Throws ArgumentError for
// an empty hypothesis list or mismatched list sizes.
MetricResult bleu(const std::vector<Tokens>& hypotheses,
                  const std::vector<std::vector<Tokens>>& references,
                  int max_n = kDefaultBleuOrder);
MetricResult bleu(const std::vector<Tokens>& hypotheses, const std::vector<Tokens>& references,
                  int max_n = kDefaultBleuOrder);
// Depends only on the retokenized references.
HashCode bleu_hash(const std::vector<std::vector<Tokens>>& references);

struct SamplingOptions {
  std::size_t sample_size = kDefaultSampleSize;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: one worker per hardware thread
};

// Mean BLEU of each sampled sentence against the other sampled sentences.
// Throws ArgumentError when fewer than two sentences are sampled.
MetricResult self_bleu(const std::vector<Tokens>& generated, const SamplingOptions& options = {},
                       int max_n = kDefaultBleuOrder);

struct FbhSamplingOptions {
  std::size_t hypothesis_sample_size = kDefaultSampleSize;
  std::size_t reference_sample_size = kDefaultSampleSize;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

// forward: mean BLEU of sampled generated sentences against the sampled test
// references; backward: mean BLEU of sampled test sentences against the
// sampled generated sentences; harmonic: 2FB / (F + B), 0 when F + B = 0.
MetricResult fbh_bleu(const std::vector<Tokens>& generated,
                      const std::vector<Tokens>& test_references,
                      const FbhSamplingOptions& options = {}, int max_n = kDefaultBleuOrder);

// ---------------------------------------------------------------------------
// forward: perplexity of the generated text under a Kneser-Ney model trained
// on the real text; reverse: perplexity of the real text under a model trained
// on the generated text.
MetricResult fr_perplexity(const std::vector<Tokens>& generated, const std::vector<Tokens>& real,
                           int order = NGramModel::kDefaultOrder,
                           double discount = NGramModel::kDefaultDiscount);

// Distinct n-grams over all n-grams of the generated text. Zero n-grams gives
// 0.0 with the degenerate flag set.
MetricResult distinct_n(const std::vector<Tokens>& generated, int n = 2);

}  // namespace fairgen
