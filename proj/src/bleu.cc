#include <algorithm>
#include <cmath>

#include "bleu_internal.h"
#include "fairgen/error.h"
#include "fairgen/hashing.h"
#include "fairgen/metrics.h"

namespace fairgen {
namespace bleu_detail {

NgramCounts count_ngrams(const Tokens& tokens, int max_n) {
  NgramCounts counts;
  const std::size_t length = tokens.size();
  for (std::size_t start = 0; start < length; ++start) {
    std::string key(1, '\0');
    for (int n = 1; n <= max_n && start + n <= length; ++n) {
      const std::string& token = tokens[start + n - 1];
      if (token == kUnkToken) break;
      const auto size = static_cast<std::uint32_t>(token.size());
      key[0] = static_cast<char>(n);
      key.append(reinterpret_cast<const char*>(&size), sizeof(size));
      key.append(token);
      ++counts[key];
    }
  }
  return counts;
}

void BleuStats::add(const BleuStats& other) {
  for (std::size_t i = 0; i < matches.size(); ++i) {
    matches[i] += other.matches[i];
    totals[i] += other.totals[i];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
}

PooledReferences::PooledReferences(std::span<const Tokens> references, int max_n) {
  for (std::size_t r = 0; r < references.size(); ++r) {
    lengths_.push_back(references[r].size());
    ++length_histogram_[references[r].size()];
    for (const auto& [key, count] : count_ngrams(references[r], max_n)) {
      Top& top = counts_[key];
      if (count > top.best) {
        top.second = top.best;
        top.best = count;
        top.owner = r;
      } else if (count > top.second) {
        top.second = count;
      }
    }
  }
}

std::uint32_t PooledReferences::max_count(const std::string& key,
                                          std::optional<std::size_t> exclude) const {
  const auto it = counts_.find(key);
  if (it == counts_.end()) return 0;
  if (exclude && it->second.owner == *exclude) return it->second.second;
  return it->second.best;
}

double PooledReferences::closest_length(std::size_t hyp_length,
                                        std::optional<std::size_t> exclude) const {
  const std::optional<std::size_t> skipped =
      exclude ? std::optional<std::size_t>(lengths_[*exclude]) : std::nullopt;
  bool found = false;
  std::size_t best = 0;
  for (const auto& [length, count] : length_histogram_) {
    if (skipped && length == *skipped && count == 1) continue;
    const auto distance = [&](std::size_t l) { return l > hyp_length ? l - hyp_length : hyp_length - l; };
    // Ascending iteration keeps the shorter length on ties.
    if (!found || distance(length) < distance(best)) {
      best = length;
      found = true;
    }
  }
  return static_cast<double>(best);
}

BleuStats sentence_stats(const Tokens& hypothesis, const PooledReferences& references,
                         std::optional<std::size_t> exclude, int max_n) {
  BleuStats stats(max_n);
  const std::size_t length = hypothesis.size();
  for (int n = 1; n <= max_n; ++n)
    stats.totals[n - 1] = length >= static_cast<std::size_t>(n) ? static_cast<double>(length - n + 1) : 0.0;
  for (const auto& [key, count] : count_ngrams(hypothesis, max_n)) {
    const int n = static_cast<unsigned char>(key[0]);
    stats.matches[n - 1] += std::min(count, references.max_count(key, exclude));
  }
  stats.hyp_length = static_cast<double>(length);
  stats.ref_length = references.closest_length(length, exclude);
  return stats;
}

double score(const BleuStats& stats) {
  if (stats.hyp_length <= 0.0 || stats.matches.empty() || stats.matches[0] <= 0.0) return 0.0;
  double log_precision = 0.0;
  for (std::size_t i = 0; i < stats.matches.size(); ++i) {
    const double matches = stats.matches[i];
    const double total = stats.totals[i];
    log_precision += (i > 0 && matches == 0.0) ? -std::log(total + 1.0) : std::log(matches / total);
  }
  log_precision /= static_cast<double>(stats.matches.size());
  const double brevity =
      stats.hyp_length <= stats.ref_length ? 1.0 - stats.ref_length / stats.hyp_length : 0.0;
  return std::exp(log_precision + brevity);
}

}  // namespace bleu_detail

namespace {

void check_order(int max_n) {
  if (max_n < 1 || max_n > 127) throw ArgumentError("BLEU order must lie in [1, 127]");
}

}  // namespace

HashCode bleu_hash(const std::vector<std::vector<Tokens>>& references) {
  std::vector<std::vector<Tokens>> groups;
  groups.reserve(references.size());
  for (const auto& group : references) {
    std::vector<Tokens> retokenized;
    for (const Tokens& reference : group) retokenized.push_back(standard_retokenize(reference));
    std::sort(retokenized.begin(), retokenized.end());
    groups.push_back(std::move(retokenized));
  }
  return CanonicalWriter().field("bleu").field(sentence_multiset_hash(groups)).hash();
}

MetricResult bleu(const std::vector<Tokens>& hypotheses,
                  const std::vector<std::vector<Tokens>>& references, int max_n) {
  check_order(max_n);
  if (hypotheses.empty()) throw ArgumentError("BLEU needs at least one hypothesis");
  if (hypotheses.size() != references.size())
    throw ArgumentError("BLEU got " + std::to_string(hypotheses.size()) + " hypotheses but " +
                        std::to_string(references.size()) + " reference lists");

  bleu_detail::BleuStats total(max_n);
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    std::vector<Tokens> group;
    for (const Tokens& reference : references[i]) group.push_back(standard_retokenize(reference));
    if (group.empty()) throw ArgumentError("hypothesis " + std::to_string(i) + " has no reference");
    const bleu_detail::PooledReferences pool(group, max_n);
    total.add(bleu_detail::sentence_stats(standard_retokenize(hypotheses[i]), pool, std::nullopt, max_n));
  }
  return MetricResult{"bleu-" + std::to_string(max_n), {{"value", bleu_detail::score(total)}},
                      bleu_hash(references), max_n, false};
}

MetricResult bleu(const std::vector<Tokens>& hypotheses, const std::vector<Tokens>& references,
                  int max_n) {
  std::vector<std::vector<Tokens>> wrapped;
  wrapped.reserve(references.size());
  for (const Tokens& reference : references) wrapped.push_back({reference});
  return bleu(hypotheses, wrapped, max_n);
}

}  // namespace fairgen
