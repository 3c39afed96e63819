#include "fairgen/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "fairgen/error.h"

namespace fairgen {
namespace {

const std::string kFrequentHeader = "#F";
const std::string kRareHeader = "#R";
const std::string kThresholdHeader = "#t_min ";

using CountTable = std::unordered_map<std::string, std::size_t>;

// Descending count, then byte-wise ascending token.
void sort_by_count(std::vector<std::string>& tokens, const CountTable& counts) {
  auto count_of = [&](const std::string& token) {
    const auto it = counts.find(token);
    return it == counts.end() ? std::size_t{0} : it->second;
  };
  std::sort(tokens.begin(), tokens.end(), [&](const std::string& a, const std::string& b) {
    const std::size_t ca = count_of(a);
    const std::size_t cb = count_of(b);
    if (ca != cb) return ca > cb;
    return a < b;
  });
}

}  // namespace

const std::vector<std::string>& Vocab::specials() {
  static const std::vector<std::string> kSpecials = {
      std::string(kPadToken), std::string(kUnkToken), std::string(kGoToken),
      std::string(kEosToken)};
  return kSpecials;
}

Vocab::Vocab(std::vector<std::string> frequent, std::vector<std::string> rare, std::size_t t_min)
    : num_frequent_(frequent.size()), t_min_(t_min) {
  if (t_min == 0) throw ArgumentError("t_min must be positive");
  id_to_token_ = specials();
  id_to_token_.reserve(kNumSpecials + frequent.size() + rare.size());
  for (auto& token : frequent) id_to_token_.push_back(std::move(token));
  for (auto& token : rare) id_to_token_.push_back(std::move(token));

  token_to_id_.reserve(id_to_token_.size());
  for (std::size_t i = 0; i < id_to_token_.size(); ++i) {
    const auto [it, inserted] = token_to_id_.emplace(id_to_token_[i], static_cast<TokenId>(i));
    if (!inserted) {
      if (static_cast<std::size_t>(it->second) < kNumSpecials)
        throw ArgumentError("special token '" + id_to_token_[i] + "' in vocabulary lists");
      throw ArgumentError("token '" + id_to_token_[i] + "' appears twice in vocabulary lists");
    }
  }
}

std::span<const std::string> Vocab::frequent() const {
  return std::span<const std::string>(id_to_token_).subspan(kNumSpecials, num_frequent_);
}

std::span<const std::string> Vocab::rare() const {
  return std::span<const std::string>(id_to_token_).subspan(kNumSpecials + num_frequent_);
}

std::optional<TokenId> Vocab::find(const std::string& token) const {
  const auto it = token_to_id_.find(token);
  if (it == token_to_id_.end()) return std::nullopt;
  return it->second;
}

bool Vocab::is_special(const std::string& token) const {
  const auto id = find(token);
  return id && static_cast<std::size_t>(*id) < kNumSpecials;
}

bool Vocab::is_frequent(const std::string& token) const {
  const auto id = find(token);
  return id && static_cast<std::size_t>(*id) >= kNumSpecials &&
         static_cast<std::size_t>(*id) < kNumSpecials + num_frequent_;
}

bool Vocab::is_rare(const std::string& token) const {
  const auto id = find(token);
  return id && static_cast<std::size_t>(*id) >= kNumSpecials + num_frequent_;
}

TokenId Vocab::id(const std::string& token, MappingMode mode) const {
  const auto found = find(token);
  if (!found) return kUnkId;
  if (mode == MappingMode::kTrain && static_cast<std::size_t>(*found) >= kNumSpecials + num_frequent_)
    return kUnkId;
  return *found;
}

const std::string& Vocab::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= id_to_token_.size())
    throw ArgumentError("token id " + std::to_string(id) + " out of range [0, " +
                        std::to_string(id_to_token_.size()) + ")");
  return id_to_token_[static_cast<std::size_t>(id)];
}

Vocab build_vocab(const TokenizedCorpus& corpus, std::size_t t_min) {
  if (t_min == 0) throw ArgumentError("t_min must be positive");
  const std::unordered_set<std::string> special_set(Vocab::specials().begin(),
                                                    Vocab::specials().end());

  CountTable train_counts;
  for (const TokenizedSample& sample : corpus.split(kTrainSplit))
    for (const Tokens& sentence : sample)
      for (const std::string& token : sentence)
        if (!special_set.contains(token)) ++train_counts[token];

  std::unordered_set<std::string> test_tokens;
  for (const TokenizedSample& sample : corpus.split(kTestSplit))
    for (const Tokens& sentence : sample)
      for (const std::string& token : sentence)
        if (!special_set.contains(token)) test_tokens.insert(token);

  std::vector<std::string> frequent;
  std::vector<std::string> rare;
  for (const auto& [token, count] : train_counts) (count >= t_min ? frequent : rare).push_back(token);
  for (const std::string& token : test_tokens)
    if (!train_counts.contains(token)) rare.push_back(token);

  sort_by_count(frequent, train_counts);
  sort_by_count(rare, train_counts);
  return Vocab(std::move(frequent), std::move(rare), t_min);
}

std::vector<TokenId> to_ids(const Tokens& tokens, const Vocab& vocab, MappingMode mode) {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const std::string& token : tokens) ids.push_back(vocab.id(token, mode));
  return ids;
}

Tokens to_tokens(std::span<const TokenId> ids, const Vocab& vocab) {
  Tokens tokens;
  tokens.reserve(ids.size());
  for (TokenId id : ids) tokens.push_back(vocab.token(id));
  return tokens;
}

std::string serialize_vocab_file(const Vocab& vocab) {
  std::string out = kThresholdHeader + std::to_string(vocab.t_min()) + "\n";
  auto section = [&](const std::string& header, std::span<const std::string> tokens) {
    out += header + "\n";
    for (const std::string& token : tokens) {
      if (token == kFrequentHeader || token == kRareHeader || token.find('\n') != std::string::npos)
        throw ArgumentError("token '" + token + "' cannot be written to a vocab file");
      out += token + "\n";
    }
  };
  section(kFrequentHeader, vocab.frequent());
  section(kRareHeader, vocab.rare());
  return out;
}

Vocab parse_vocab_file(std::string_view contents, std::string_view label) {
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError(std::string(label) + ":" + std::to_string(line_no) + ": " + why);
  };

  ++line_no;
  if (!std::getline(in, line) || !line.starts_with(kThresholdHeader))
    throw fail("expected \"" + kThresholdHeader + "<n>\"");
  std::size_t t_min = 0;
  try {
    std::size_t consumed = 0;
    t_min = std::stoul(line.substr(kThresholdHeader.size()), &consumed);
    if (consumed + kThresholdHeader.size() != line.size()) throw std::invalid_argument("trailing");
  } catch (const std::logic_error&) {
    throw fail("bad t_min value");
  }

  ++line_no;
  if (!std::getline(in, line) || line != kFrequentHeader) throw fail("expected \"#F\"");

  std::vector<std::string> frequent;
  std::vector<std::string> rare;
  bool in_rare = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!in_rare && line == kRareHeader) {
      in_rare = true;
      continue;
    }
    if (line.empty()) throw fail("empty token");
    (in_rare ? rare : frequent).push_back(line);
  }
  if (!in_rare) throw fail("missing \"#R\" section");
  try {
    return Vocab(std::move(frequent), std::move(rare), t_min);
  } catch (const ArgumentError& e) {
    throw ParseError(std::string(label) + ": " + e.what());
  }
}

void write_vocab(const Vocab& vocab, const std::filesystem::path& path) {
  const std::string contents = serialize_vocab_file(vocab);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write vocab file " + path.string());
  out << contents;
}

Vocab read_vocab(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read vocab file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_vocab_file(buffer.str(), path.string());
}

}  // namespace fairgen
