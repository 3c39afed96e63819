#include "fairgen/hashing.h"

#include <fstream>
#include <sstream>

#include "fairgen/error.h"

namespace fairgen {
namespace {

constexpr char kTokenSeparator = '\x1f';
constexpr char kSentenceSeparator = '\x1e';

HashCode::Digest sample_digest(std::string_view split, std::string_view payload) {
  return Sha256().update(CanonicalWriter().field(split).bytes()).update(payload).finish().digest();
}

}  // namespace

std::string serialize_tokens(const Tokens& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += kTokenSeparator;
    out += tokens[i];
  }
  return out;
}

std::string serialize_sample(const std::vector<Tokens>& sentences) {
  std::string out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i > 0) out += kSentenceSeparator;
    out += serialize_tokens(sentences[i]);
  }
  return out;
}

HashCode sentence_multiset_hash(const std::vector<std::vector<Tokens>>& samples) {
  std::vector<HashCode::Digest> digests;
  digests.reserve(samples.size());
  for (const auto& sample : samples) digests.push_back(sha256(serialize_sample(sample)).digest());
  return combine_unordered(std::move(digests));
}

HashCode sentence_multiset_hash(const std::vector<Tokens>& sentences) {
  std::vector<HashCode::Digest> digests;
  digests.reserve(sentences.size());
  for (const Tokens& sentence : sentences)
    digests.push_back(sha256(serialize_tokens(sentence)).digest());
  return combine_unordered(std::move(digests));
}

HashCode raw_data_hash(const RawCorpus& raw) {
  std::vector<HashCode::Digest> digests;
  for (const auto& [split, samples] : raw.splits)
    for (const RawSample& sample : samples)
      digests.push_back(sample_digest(split, serialize_raw_sample(raw.task, sample)));
  return combine_unordered(std::move(digests));
}

HashCode data_hash(const TokenizedCorpus& corpus) {
  std::vector<HashCode::Digest> digests;
  for (const auto& [split, samples] : corpus.splits)
    for (const TokenizedSample& sample : samples)
      digests.push_back(sample_digest(split, serialize_sample(sample)));
  return combine_unordered(std::move(digests));
}

std::string canonical_form(const TokenizerSpec& spec) {
  spec.validate();
  CanonicalWriter writer;
  writer.field("tokenizer").field(to_string(spec.kind)).field(spec.lowercase ? "lower" : "cased");
  if (spec.bpe_merges_path) {
    std::ifstream in(*spec.bpe_merges_path, std::ios::binary);
    if (!in) throw ConfigError("cannot read BPE merges file " + spec.bpe_merges_path->string());
    std::ostringstream contents;
    contents << in.rdbuf();
    writer.field(sha256(contents.str()));
  }
  return writer.bytes();
}

std::string canonical_form(const Vocab& vocab) {
  CanonicalWriter writer;
  writer.field("vocab")
      .list(Vocab::specials())
      .list(vocab.frequent())
      .list(vocab.rare())
      .field(static_cast<std::uint64_t>(vocab.t_min()));
  return writer.bytes();
}

HashCode vocab_hash(const Vocab& vocab) { return sha256(canonical_form(vocab)); }

HashCode setting_hash(const TokenizerSpec& spec, const Vocab& vocab, Task task) {
  return CanonicalWriter()
      .field(canonical_form(spec))
      .field(canonical_form(vocab))
      .field(to_string(task))
      .hash();
}

HashCode general_hash(const HashCode& raw, const HashCode& data, const HashCode& vocab,
                      const HashCode& setting) {
  Sha256 hasher;
  for (const HashCode* part : {&raw, &data, &vocab, &setting})
    hasher.update(std::span<const std::uint8_t>(part->digest()));
  return hasher.finish();
}

HashCode general_hash(const RawCorpus& raw, const TokenizedCorpus& corpus, const Vocab& vocab,
                      const TokenizerSpec& spec, Task task) {
  return general_hash(raw_data_hash(raw), data_hash(corpus), vocab_hash(vocab),
                      setting_hash(spec, vocab, task));
}

DataHashes compute_data_hashes(const RawCorpus& raw, const TokenizedCorpus& corpus,
                               const Vocab& vocab) {
  HashCode raw_hash = raw_data_hash(raw);
  HashCode tokenized_hash = data_hash(corpus);
  HashCode vocabulary_hash = vocab_hash(vocab);
  HashCode settings_hash = setting_hash(corpus.tokenizer_spec, vocab, corpus.task);
  HashCode all = general_hash(raw_hash, tokenized_hash, vocabulary_hash, settings_hash);
  return DataHashes{raw_hash, tokenized_hash, vocabulary_hash, settings_hash, all};
}

}  // namespace fairgen
