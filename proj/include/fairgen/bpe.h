#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fairgen {

inline constexpr std::string_view kBpeContinuation = "@@";

// Ranked merge rules. The merges file holds one "left right" pair per line;
// the rank of a rule is its position among the non-comment lines. Lines
// starting with '#' and blank lines are skipped.
class BpeMerges {
 public:
  BpeMerges() = default;
  explicit BpeMerges(const std::vector<std::pair<std::string, std::string>>& pairs);

  // Throws ConfigError naming the path if the file cannot be read or a line
  // is not a pair of non-empty symbols.
  static BpeMerges load(const std::filesystem::path& path);

  // Splits one whitespace-free word into pieces (no continuation markers).
  std::vector<std::string> apply(std::string_view word) const;

  std::size_t size() const { return ranks_.size(); }

 private:
  std::unordered_map<std::string, std::size_t> ranks_;
};

}  // namespace fairgen
