#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fairgen/tokenizer.h"

namespace fairgen {

// Interpolated Kneser-Ney n-gram model with one fixed absolute discount.
//
// Every training sentence is padded with (order - 1) begin markers and closed
// by one <eos>. The highest order uses raw counts, lower orders use
// continuation counts (number of distinct left extensions), and the unigram
// level interpolates with the uniform distribution over V + {<eos>}, where V
// is the set of training tokens plus <unk>. Tokens never seen in training are
// scored as <unk>. All log-probabilities are natural logs.
class NGramModel {
 public:
  static constexpr int kDefaultOrder = 5;
  static constexpr double kDefaultDiscount = 0.75;
  static constexpr std::string_view kBeginToken = "<s>";

  // Throws ArgumentError for order < 1 or discount outside (0, 1), and
  // TrainingError when no sentence has a token.
  static NGramModel train(const std::vector<Tokens>& sentences, int order = kDefaultOrder,
                          double discount = kDefaultDiscount);

  int order() const { return order_; }
  double discount() const { return discount_; }

  // V + {<eos>}: the events the model distributes mass over.
  std::vector<std::string> events() const;

  // P(word | context). Only the last (order - 1) context tokens are used; a
  // shorter context is evaluated at the matching lower level. "<s>" in the
  // context denotes the begin marker.
  double probability(std::span<const std::string> context, const std::string& word) const;

  // Contexts (length level - 1) with at least one count at `level`.
  std::vector<Tokens> observed_contexts(int level) const;

  double sentence_logprob(const Tokens& sentence) const;

  // Plain-text count tables: a "# order <n> raw|continuation" header per
  // level, then sorted "context<TAB>token<TAB>count" lines.
  void dump(std::ostream& out) const;

 private:
  using Key = std::u32string;
  struct ContextStats {
    std::uint64_t total = 0;
    std::unordered_map<char32_t, std::uint64_t> counts;
  };
  using Table = std::unordered_map<Key, ContextStats>;

  NGramModel() = default;

  char32_t lookup(const std::string& token) const;
  const std::string& spelling(char32_t id) const;
  double level_probability(int level, std::u32string_view context, char32_t word) const;

  int order_ = kDefaultOrder;
  double discount_ = kDefaultDiscount;
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, char32_t> token_to_id_;
  std::vector<Table> tables_;  // tables_[n - 1] holds level n
};

NGramModel train_lm(const std::vector<Tokens>& sentences, int order = NGramModel::kDefaultOrder,
                    double discount = NGramModel::kDefaultDiscount);

double sentence_logprob(const NGramModel& model, const Tokens& sentence);

// exp(-(sum of sentence log-probs) / (tokens + one <eos> per sentence)).
// Throws ArgumentError for an empty sentence list.
double lm_perplexity(const NGramModel& model, const std::vector<Tokens>& sentences);

}  // namespace fairgen
