#include "fairgen/bpe.h"

#include <unicode/utf8.h>

#include <fstream>
#include <limits>
#include <sstream>

#include "fairgen/error.h"

namespace fairgen {
namespace {

std::string pair_key(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key.push_back('\x1f');
  key.append(right);
  return key;
}

std::vector<std::string> code_points(std::string_view word) {
  std::vector<std::string> out;
  const auto* s = reinterpret_cast<const uint8_t*>(word.data());
  const auto length = static_cast<int32_t>(word.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    out.emplace_back(word.substr(at, i - at));
  }
  return out;
}

}  // namespace

BpeMerges::BpeMerges(const std::vector<std::pair<std::string, std::string>>& pairs) {
  for (const auto& [left, right] : pairs) ranks_.try_emplace(pair_key(left, right), ranks_.size());
}

BpeMerges BpeMerges::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read BPE merges file " + path.string());

  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string left, right, extra;
    if (!(fields >> left >> right) || (fields >> extra))
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": ill-formed BPE merge, expected \"left right\"");
    pairs.emplace_back(std::move(left), std::move(right));
  }
  if (in.bad()) throw ConfigError("cannot read BPE merges file " + path.string());
  return BpeMerges(pairs);
}

std::vector<std::string> BpeMerges::apply(std::string_view word) const {
  std::vector<std::string> symbols = code_points(word);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  while (symbols.size() > 1) {
    std::size_t best_rank = kNone;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      const auto it = ranks_.find(pair_key(symbols[i], symbols[i + 1]));
      if (it != ranks_.end() && it->second < best_rank) best_rank = it->second;
    }
    if (best_rank == kNone) break;

    std::vector<std::string> merged;
    merged.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i + 1 < symbols.size()) {
        const auto it = ranks_.find(pair_key(symbols[i], symbols[i + 1]));
        if (it != ranks_.end() && it->second == best_rank) {
          merged.push_back(symbols[i] + symbols[i + 1]);
          ++i;
          continue;
        }
      }
      merged.push_back(std::move(symbols[i]));
    }
    symbols = std::move(merged);
  }
  return symbols;
}

}  // namespace fairgen
