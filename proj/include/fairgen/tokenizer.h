#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairgen {

using Tokens = std::vector<std::string>;

// Surface form of the unknown-word placeholder. Both tokenizer kinds keep it
// as a single token wherever it occurs in the input.
inline constexpr std::string_view kUnkToken = "<unk>";

enum class TokenizerKind { kStandardWord, kBpe };

std::string_view to_string(TokenizerKind kind);
// Accepts "standard-word" (alias "standard") and "bpe".
TokenizerKind parse_tokenizer_kind(std::string_view name);

struct TokenizerSpec {
  TokenizerKind kind = TokenizerKind::kStandardWord;
  bool lowercase = true;
  std::optional<std::filesystem::path> bpe_merges_path;

  static TokenizerSpec standard_word(bool lowercase = true);
  static TokenizerSpec bpe(std::filesystem::path merges, bool lowercase = true);

  // Throws ConfigError unless a merges file is given exactly when kind is bpe.
  void validate() const;

  bool operator==(const TokenizerSpec&) const = default;
};

class BpeMerges;

// An immutable tokenizer built from a TokenizerSpec.
//
// standard-word: NFC-normalize, split on Unicode whitespace, then split every
// maximal run of punctuation/symbol characters (general categories P* and S*)
// away from the surrounding word characters; optionally lowercase.
//
// bpe: NFC-normalize, optionally lowercase, split on whitespace, then apply the
// ranked merge rules greedily inside each word. Every piece except the last one
// of a word carries the "@@" continuation suffix so detokenize() can rebuild
// the words.
class Tokenizer {
 public:
  explicit Tokenizer(TokenizerSpec spec);

  Tokens tokenize(std::string_view text) const;

  // Rebuilds surface text. Tokens are joined with single spaces; for the bpe
  // kind, continuation pieces are glued back onto the following piece.
  std::string detokenize(const Tokens& tokens) const;

  // Standard retokenization of whatever this tokenizer produced: the surface
  // text from detokenize() re-split by the lowercasing standard-word rules.
  Tokens standardize(const Tokens& tokens) const;

  const TokenizerSpec& spec() const { return spec_; }

 private:
  TokenizerSpec spec_;
  std::shared_ptr<const BpeMerges> merges_;
};

// Convenience wrapper constructing a Tokenizer for one call.
Tokens tokenize(std::string_view text, const TokenizerSpec& spec);

// Joins tokens with single spaces.
std::string detokenize(const Tokens& tokens);

// tokenize(detokenize(tokens)) under the lowercasing standard-word spec.
// Idempotent.
Tokens standard_retokenize(const Tokens& tokens);

}  // namespace fairgen
