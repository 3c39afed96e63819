#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fairgen/corpus.h"
#include "fairgen/hash_code.h"
#include "fairgen/tokenizer.h"
#include "fairgen/vocabulary.h"

namespace fairgen {

// Data-loader fingerprints: raw text, tokenized text, vocabulary, settings,
// and the general hash over those four.
//
// Every corpus-level hash is a per-sample SHA-256 followed by
// combine_unordered(), so reordering samples within a split never changes
// the result.
struct DataHashes {
  HashCode raw;
  HashCode data;
  HashCode vocab;
  HashCode setting;
  HashCode general;

  bool operator==(const DataHashes&) const = default;
};

HashCode raw_data_hash(const RawCorpus& raw);
HashCode data_hash(const TokenizedCorpus& corpus);
HashCode vocab_hash(const Vocab& vocab);
HashCode setting_hash(const TokenizerSpec& spec, const Vocab& vocab, Task task);
HashCode general_hash(const RawCorpus& raw, const TokenizedCorpus& corpus, const Vocab& vocab,
                      const TokenizerSpec& spec, Task task);
// The general hash from already computed component hashes (raw, data, vocab,
// setting order). Used to recheck stored reports.
HashCode general_hash(const HashCode& raw, const HashCode& data, const HashCode& vocab,
                      const HashCode& setting);

DataHashes compute_data_hashes(const RawCorpus& raw, const TokenizedCorpus& corpus,
                               const Vocab& vocab);

// Tokens joined by 0x1F.
std::string serialize_tokens(const Tokens& tokens);
// Sentences of a sample joined by 0x1E, each serialized with serialize_tokens.
std::string serialize_sample(const std::vector<Tokens>& sentences);

// Order-insensitive hash of a list of sentence groups (one group per sample).
HashCode sentence_multiset_hash(const std::vector<std::vector<Tokens>>& samples);
// Convenience for one sentence per sample.
HashCode sentence_multiset_hash(const std::vector<Tokens>& sentences);

// Canonical byte forms that feed the setting hash. For the bpe kind the
// merges file contents enter as their SHA-256, so the form does not depend on
// where the file lives; an unreadable merges file raises ConfigError.
std::string canonical_form(const TokenizerSpec& spec);
std::string canonical_form(const Vocab& vocab);

}  // namespace fairgen
