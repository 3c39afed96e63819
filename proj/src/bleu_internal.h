#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fairgen/tokenizer.h"

namespace fairgen::bleu_detail {

// Key: order byte, then each token as 4-byte length + bytes.
using NgramCounts = std::unordered_map<std::string, std::uint32_t>;

// Counts n-grams of orders 1..max_n, leaving out any n-gram that contains
// "<unk>".
NgramCounts count_ngrams(const Tokens& tokens, int max_n);

struct BleuStats {
  std::vector<double> matches;
  std::vector<double> totals;
  double hyp_length = 0.0;
  double ref_length = 0.0;

  explicit BleuStats(int max_n) : matches(max_n, 0.0), totals(max_n, 0.0) {}
  void add(const BleuStats& other);
};

// Reference pool for clipping. Remembers the two largest counts of every
// n-gram so that one member of the pool can be left out of a query (self-BLEU).
class PooledReferences {
 public:
  PooledReferences(std::span<const Tokens> references, int max_n);

  std::uint32_t max_count(const std::string& key, std::optional<std::size_t> exclude) const;
  // Reference length closest to hyp_length; ties go to the shorter length.
  double closest_length(std::size_t hyp_length, std::optional<std::size_t> exclude) const;

 private:
  struct Top {
    std::uint32_t best = 0;
    std::size_t owner = 0;
    std::uint32_t second = 0;
  };
  std::unordered_map<std::string, Top> counts_;
  std::vector<std::size_t> lengths_;
  std::map<std::size_t, std::size_t> length_histogram_;
};

BleuStats sentence_stats(const Tokens& hypothesis, const PooledReferences& references,
                         std::optional<std::size_t> exclude, int max_n);

// Geometric mean of the (smoothed) precisions times the brevity penalty.
double score(const BleuStats& stats);

}  // namespace fairgen::bleu_detail
