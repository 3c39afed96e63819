#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fairgen/corpus.h"
#include "fairgen/tokenizer.h"

namespace fairgen {

using TokenId = std::int32_t;

inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kGoToken = "<go>";
inline constexpr std::string_view kEosToken = "<eos>";

// train: the model's view, everything outside F maps to unk.
// test:  the evaluation view, F and R keep their own ids.
enum class MappingMode { kTrain, kTest };

// Frequent/rare vocabulary split.
//
// Ids: specials [<pad>, <unk>, <go>, <eos>] take 0..3, the frequent list F the
// next |F| ids, the rare list R the following |R| ids. F and R are disjoint
// and contain no special token.
class Vocab {
 public:
  static constexpr TokenId kPadId = 0;
  static constexpr TokenId kUnkId = 1;
  static constexpr TokenId kGoId = 2;
  static constexpr TokenId kEosId = 3;
  static constexpr std::size_t kNumSpecials = 4;

  // Throws ArgumentError when t_min is 0, a token repeats, or a special
  // token appears in either list.
  Vocab(std::vector<std::string> frequent, std::vector<std::string> rare, std::size_t t_min);

  static const std::vector<std::string>& specials();

  std::span<const std::string> frequent() const;
  std::span<const std::string> rare() const;
  std::size_t t_min() const { return t_min_; }
  std::size_t size() const { return id_to_token_.size(); }

  std::optional<TokenId> find(const std::string& token) const;
  bool is_special(const std::string& token) const;
  bool is_frequent(const std::string& token) const;
  bool is_rare(const std::string& token) const;

  TokenId id(const std::string& token, MappingMode mode) const;
  // Throws ArgumentError for an out-of-range id.
  const std::string& token(TokenId id) const;

  bool operator==(const Vocab& other) const {
    return id_to_token_ == other.id_to_token_ && num_frequent_ == other.num_frequent_ &&
           t_min_ == other.t_min_;
  }

 private:
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, TokenId> token_to_id_;
  std::size_t num_frequent_ = 0;
  std::size_t t_min_ = 1;
};

// F = tokens seen at least t_min times in the train split; R = every other
// distinct token of train and test. Both lists are ordered by descending
// train count, ties broken by byte-wise token order. The dev split does not
// participate. Throws ArgumentError for t_min == 0 or missing splits.
Vocab build_vocab(const TokenizedCorpus& corpus, std::size_t t_min);

std::vector<TokenId> to_ids(const Tokens& tokens, const Vocab& vocab, MappingMode mode);
Tokens to_tokens(std::span<const TokenId> ids, const Vocab& vocab);

// Vocab file: "#t_min <n>", then "#F" followed by one token per line, then
// "#R" followed by one token per line. UTF-8, "\n" endings.
std::string serialize_vocab_file(const Vocab& vocab);
Vocab parse_vocab_file(std::string_view contents, std::string_view label);
void write_vocab(const Vocab& vocab, const std::filesystem::path& path);
Vocab read_vocab(const std::filesystem::path& path);

}  // namespace fairgen
