#include "fairgen/ngram_lm.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include "fairgen/error.h"
#include "fairgen/vocabulary.h"

namespace fairgen {
namespace {

constexpr char32_t kBeginId = 0;
constexpr char32_t kEosId = 1;
constexpr char32_t kUnkId = 2;

}  // namespace

NGramModel NGramModel::train(const std::vector<Tokens>& sentences, int order, double discount) {
  if (order < 1) throw ArgumentError("n-gram order must be at least 1");
  if (!(discount > 0.0 && discount < 1.0)) throw ArgumentError("discount must lie in (0, 1)");
  const bool has_token = std::any_of(sentences.begin(), sentences.end(),
                                     [](const Tokens& s) { return !s.empty(); });
  if (!has_token) throw TrainingError("cannot train an n-gram model without any tokens");

  NGramModel model;
  model.order_ = order;
  model.discount_ = discount;
  model.id_to_token_ = {std::string(kBeginToken), std::string(kEosToken), std::string(kUnkToken)};
  for (char32_t id = 0; id < model.id_to_token_.size(); ++id)
    model.token_to_id_.emplace(model.id_to_token_[id], id);

  std::set<std::string> words;
  for (const Tokens& sentence : sentences)
    for (const std::string& token : sentence)
      if (!model.token_to_id_.contains(token)) words.insert(token);
  for (const std::string& word : words) {
    model.token_to_id_.emplace(word, static_cast<char32_t>(model.id_to_token_.size()));
    model.id_to_token_.push_back(word);
  }

  const auto n = static_cast<std::size_t>(order);
  model.tables_.assign(n, Table{});

  // Raw counts at the highest order.
  Table& top = model.tables_[n - 1];
  for (const Tokens& sentence : sentences) {
    Key history(n - 1, kBeginId);
    auto observe = [&](char32_t word) {
      ContextStats& stats = top[history];
      ++stats.total;
      ++stats.counts[word];
      if (!history.empty()) {
        history.erase(history.begin());
        history.push_back(word);
      }
    };
    for (const std::string& token : sentence) observe(model.lookup(token));
    observe(kEosId);
  }

  // Continuation counts: each distinct (k+1)-gram type adds one to the count
  // of its k-gram suffix.
  for (std::size_t level = n - 1; level >= 1; --level) {
    const Table& upper = model.tables_[level];
    Table& lower = model.tables_[level - 1];
    for (const auto& [context, stats] : upper) {
      const Key suffix = context.substr(1);
      ContextStats& target = lower[suffix];
      for (const auto& entry : stats.counts) {
        ++target.total;
        ++target.counts[entry.first];
      }
    }
  }
  return model;
}

char32_t NGramModel::lookup(const std::string& token) const {
  const auto it = token_to_id_.find(token);
  if (it == token_to_id_.end() || it->second == kBeginId || it->second == kEosId) return kUnkId;
  return it->second;
}

const std::string& NGramModel::spelling(char32_t id) const { return id_to_token_[id]; }

std::vector<std::string> NGramModel::events() const {
  std::vector<std::string> out(id_to_token_.begin() + 1, id_to_token_.end());
  return out;
}

double NGramModel::level_probability(int level, std::u32string_view context, char32_t word) const {
  const double lower =
      level == 1 ? 1.0 / static_cast<double>(id_to_token_.size() - 1)
                 : level_probability(level - 1, context.substr(1), word);
  const Table& table = tables_[static_cast<std::size_t>(level - 1)];
  const auto it = table.find(Key(context));
  if (it == table.end() || it->second.total == 0) return lower;

  const ContextStats& stats = it->second;
  const auto total = static_cast<double>(stats.total);
  const auto hit = stats.counts.find(word);
  const double count = hit == stats.counts.end() ? 0.0 : static_cast<double>(hit->second);
  const double backoff = discount_ * static_cast<double>(stats.counts.size()) / total;
  return std::max(count - discount_, 0.0) / total + backoff * lower;
}

double NGramModel::probability(std::span<const std::string> context, const std::string& word) const {
  const std::size_t used = std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  Key key;
  for (std::size_t i = context.size() - used; i < context.size(); ++i)
    key.push_back(context[i] == kBeginToken ? kBeginId : lookup(context[i]));
  const char32_t target = word == kEosToken ? kEosId : lookup(word);
  return level_probability(static_cast<int>(used) + 1, key, target);
}

std::vector<Tokens> NGramModel::observed_contexts(int level) const {
  if (level < 1 || level > order_) throw ArgumentError("level out of range");
  std::vector<Tokens> out;
  for (const auto& [context, stats] : tables_[static_cast<std::size_t>(level - 1)]) {
    if (stats.total == 0) continue;
    Tokens rendered;
    for (char32_t id : context) rendered.push_back(spelling(id));
    out.push_back(std::move(rendered));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double NGramModel::sentence_logprob(const Tokens& sentence) const {
  Key history(static_cast<std::size_t>(order_ - 1), kBeginId);
  double total = 0.0;
  auto score = [&](char32_t word) {
    total += std::log(level_probability(order_, history, word));
    if (!history.empty()) {
      history.erase(history.begin());
      history.push_back(word);
    }
  };
  for (const std::string& token : sentence) score(lookup(token));
  score(kEosId);
  return total;
}

void NGramModel::dump(std::ostream& out) const {
  for (int level = 1; level <= order_; ++level) {
    out << "# order " << level << (level == order_ ? " raw" : " continuation") << '\n';
    std::vector<std::string> lines;
    for (const auto& [context, stats] : tables_[static_cast<std::size_t>(level - 1)]) {
      std::string prefix;
      for (std::size_t i = 0; i < context.size(); ++i) {
        if (i > 0) prefix += ' ';
        prefix += spelling(context[i]);
      }
      for (const auto& [word, count] : stats.counts)
        lines.push_back(prefix + '\t' + spelling(word) + '\t' + std::to_string(count));
    }
    std::sort(lines.begin(), lines.end());
    for (const std::string& line : lines) out << line << '\n';
  }
}

NGramModel train_lm(const std::vector<Tokens>& sentences, int order, double discount) {
  return NGramModel::train(sentences, order, discount);
}

double sentence_logprob(const NGramModel& model, const Tokens& sentence) {
  return model.sentence_logprob(sentence);
}

double lm_perplexity(const NGramModel& model, const std::vector<Tokens>& sentences) {
  if (sentences.empty()) throw ArgumentError("perplexity needs at least one sentence");
  double logprob = 0.0;
  std::size_t count = 0;
  for (const Tokens& sentence : sentences) {
    logprob += model.sentence_logprob(sentence);
    count += sentence.size() + 1;
  }
  return std::exp(-logprob / static_cast<double>(count));
}

}  // namespace fairgen
