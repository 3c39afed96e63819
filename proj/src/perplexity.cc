#include <algorithm>
#include <cassert>
#include <cmath>

#include "fairgen/error.h"
#include "fairgen/hashing.h"
#include "fairgen/metrics.h"

namespace fairgen {
namespace {

std::string metric_name(PerplexityVariant variant) {
  return variant == PerplexityVariant::kOriginal ? "perplexity-original" : "perplexity";
}

std::vector<std::string> sorted_union(const Vocab& vocab) {
  std::vector<std::string> tokens(vocab.frequent().begin(), vocab.frequent().end());
  tokens.insert(tokens.end(), vocab.rare().begin(), vocab.rare().end());
  std::sort(tokens.begin(), tokens.end());
  return tokens;
}

}  // namespace

HashCode perplexity_hash(const std::vector<Tokens>& references, const Vocab& vocab,
                         PerplexityVariant variant) {
  CanonicalWriter writer;
  writer.field(metric_name(variant)).field(sentence_multiset_hash(references));
  if (variant == PerplexityVariant::kUnkRedistributed) {
    writer.list(sorted_union(vocab));
  } else {
    writer.list(vocab.frequent()).list(vocab.rare());
  }
  return writer.hash();
}

MetricResult perplexity(const std::vector<Tokens>& references, const TokenScores& scores,
                        const Vocab& vocab, PerplexityVariant variant) {
  if (references.size() != scores.size())
    throw InputError("token scores hold " + std::to_string(scores.size()) +
                     " sentences but there are " + std::to_string(references.size()) +
                     " references");
  const double log_rare = std::log(static_cast<double>(vocab.rare().size()));

  double sum = 0.0;
  std::size_t positions = 0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    const SentenceScores& sentence = scores[i];
    const Tokens& reference = references[i];
    const std::string where = "sentence " + std::to_string(i);

    const bool aligned = sentence.tokens.size() == reference.size() + 1 &&
                         std::equal(reference.begin(), reference.end(), sentence.tokens.begin()) &&
                         sentence.tokens.back() == kEosToken &&
                         sentence.lp_token.size() == sentence.tokens.size() &&
                         sentence.lp_unk.size() == sentence.tokens.size();
    if (!aligned) throw InputError("token scores misaligned with the reference at " + where);

    for (std::size_t j = 0; j < sentence.tokens.size(); ++j) {
      const std::string& token = sentence.tokens[j];
      double term;
      if (vocab.is_rare(token)) {
        assert(!vocab.rare().empty());
        term = variant == PerplexityVariant::kOriginal ? sentence.lp_unk[j]
                                                       : sentence.lp_unk[j] - log_rare;
      } else if (token == kUnkToken) {
        term = sentence.lp_unk[j];
      } else if (vocab.is_frequent(token) || vocab.is_special(token)) {
        if (!sentence.lp_token[j])
          throw InputError("missing lp_token for in-vocabulary token '" + token + "' at " + where +
                           ", position " + std::to_string(j));
        term = *sentence.lp_token[j];
      } else {
        throw InputError("token '" + token + "' at " + where +
                         " is in neither the frequent nor the rare vocabulary");
      }
      sum += term;
      ++positions;
    }
  }
  if (positions == 0) throw InputError("perplexity needs at least one scored position");

  const double value = std::exp(-sum / static_cast<double>(positions));
  return MetricResult{metric_name(variant), {{"value", value}},
                      perplexity_hash(references, vocab, variant), std::nullopt, false};
}

}  // namespace fairgen
