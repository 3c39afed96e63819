#include <bit>
#include <cmath>
#include <unordered_set>

#include "bleu_internal.h"
#include "fairgen/error.h"
#include "fairgen/hashing.h"
#include "fairgen/metrics.h"
#include "fairgen/parallel.h"
#include "fairgen/random.h"

namespace fairgen {
namespace {

std::vector<Tokens> retokenize_all(const std::vector<Tokens>& sentences) {
  std::vector<Tokens> out;
  out.reserve(sentences.size());
  for (const Tokens& sentence : sentences) out.push_back(standard_retokenize(sentence));
  return out;
}

std::vector<Tokens> pick(const std::vector<Tokens>& sentences, const std::vector<std::size_t>& indices) {
  std::vector<Tokens> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(sentences[i]);
  return out;
}

// Mean sentence BLEU of each hypothesis against the pool, reduced in index order.
double mean_sentence_bleu(const std::vector<Tokens>& hypotheses,
                          const bleu_detail::PooledReferences& pool, bool exclude_self, int max_n,
                          unsigned threads) {
  const std::vector<double> scores =
      parallel_map(hypotheses.size(), threads, [&](std::size_t i) {
        const std::optional<std::size_t> exclude =
            exclude_self ? std::optional<std::size_t>(i) : std::nullopt;
        return bleu_detail::score(bleu_detail::sentence_stats(hypotheses[i], pool, exclude, max_n));
      });
  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum / static_cast<double>(scores.size());
}

void check_order(int max_n) {
  if (max_n < 1 || max_n > 127) throw ArgumentError("BLEU order must lie in [1, 127]");
}

}  // namespace

MetricResult self_bleu(const std::vector<Tokens>& generated, const SamplingOptions& options, int max_n) {
  check_order(max_n);
  const std::vector<std::size_t> indices =
      seeded_sample(generated.size(), options.sample_size, options.seed);
  if (indices.size() < 2)
    throw ArgumentError("self-BLEU needs at least two sampled sentences");

  const std::vector<Tokens> sample = retokenize_all(pick(generated, indices));
  const bleu_detail::PooledReferences pool(sample, max_n);
  const double value = mean_sentence_bleu(sample, pool, true, max_n, options.threads);

  HashCode hash = CanonicalWriter()
                      .field("self-bleu")
                      .field(static_cast<std::uint64_t>(options.sample_size))
                      .field(options.seed)
                      .hash();
  return MetricResult{"self-bleu-" + std::to_string(max_n), {{"value", value}}, hash, max_n, false};
}

MetricResult fbh_bleu(const std::vector<Tokens>& generated, const std::vector<Tokens>& test_references,
                      const FbhSamplingOptions& options, int max_n) {
  check_order(max_n);
  if (generated.empty() || test_references.empty())
    throw ArgumentError("forward/backward BLEU needs generated and reference sentences");

  // References draw from `seed`, hypotheses from `seed + 1`.
  const std::vector<Tokens> references = retokenize_all(pick(
      test_references,
      seeded_sample(test_references.size(), options.reference_sample_size, options.seed)));
  const std::vector<Tokens> hypotheses = retokenize_all(pick(
      generated, seeded_sample(generated.size(), options.hypothesis_sample_size, options.seed + 1)));
  if (references.empty() || hypotheses.empty())
    throw ArgumentError("forward/backward BLEU sample sizes must be positive");

  const bleu_detail::PooledReferences reference_pool(references, max_n);
  const bleu_detail::PooledReferences hypothesis_pool(hypotheses, max_n);
  const double forward = mean_sentence_bleu(hypotheses, reference_pool, false, max_n, options.threads);
  const double backward = mean_sentence_bleu(references, hypothesis_pool, false, max_n, options.threads);
  const double harmonic = forward + backward > 0.0 ? 2.0 * forward * backward / (forward + backward) : 0.0;

  HashCode hash = CanonicalWriter()
                      .field("fbh-bleu")
                      .field(sentence_multiset_hash(retokenize_all(test_references)))
                      .field(static_cast<std::uint64_t>(options.hypothesis_sample_size))
                      .field(static_cast<std::uint64_t>(options.reference_sample_size))
                      .field(options.seed)
                      .hash();
  return MetricResult{"fbh-bleu-" + std::to_string(max_n),
                      {{"forward", forward}, {"backward", backward}, {"harmonic", harmonic}},
                      hash,
                      max_n,
                      false};
}

MetricResult fr_perplexity(const std::vector<Tokens>& generated, const std::vector<Tokens>& real,
                           int order, double discount) {
  if (generated.empty() || real.empty())
    throw ArgumentError("forward/reverse perplexity needs generated and real sentences");
  const std::vector<Tokens> gen = retokenize_all(generated);
  const std::vector<Tokens> ref = retokenize_all(real);

  const double forward = lm_perplexity(train_lm(ref, order, discount), gen);
  const double reverse = lm_perplexity(train_lm(gen, order, discount), ref);

  HashCode hash = CanonicalWriter()
                      .field("fr-perplexity")
                      .field(sentence_multiset_hash(ref))
                      .field(static_cast<std::uint64_t>(order))
                      .field(std::bit_cast<std::uint64_t>(discount))
                      .hash();
  return MetricResult{"fr-perplexity-" + std::to_string(order),
                      {{"forward", forward}, {"reverse", reverse}},
                      hash,
                      order,
                      false};
}

MetricResult distinct_n(const std::vector<Tokens>& generated, int n) {
  if (n < 1) throw ArgumentError("distinct-n needs n >= 1");
  const auto order = static_cast<std::size_t>(n);
  std::unordered_set<std::string> distinct;
  std::size_t total = 0;
  for (const Tokens& sentence : retokenize_all(generated)) {
    if (sentence.size() < order) continue;
    for (std::size_t start = 0; start + order <= sentence.size(); ++start) {
      std::string key;
      for (std::size_t k = start; k < start + order; ++k) {
        const auto size = static_cast<std::uint32_t>(sentence[k].size());
        key.append(reinterpret_cast<const char*>(&size), sizeof(size));
        key.append(sentence[k]);
      }
      distinct.insert(std::move(key));
      ++total;
    }
  }
  const bool degenerate = total == 0;
  const double value =
      degenerate ? 0.0 : static_cast<double>(distinct.size()) / static_cast<double>(total);
  HashCode hash = CanonicalWriter().field("distinct").field(static_cast<std::uint64_t>(n)).hash();
  return MetricResult{"distinct-" + std::to_string(n), {{"value", value}}, hash, n, degenerate};
}

}  // namespace fairgen
