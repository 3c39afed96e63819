#pragma once

// ASCII-only word/punctuation splitter: whitespace separates, and each
// maximal run of ispunct() characters becomes its own token.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace fairgen::oracle {

inline std::vector<std::string> split_ascii(std::string_view text, bool lowercase) {
  enum Class { kSpace, kPunct, kWord };
  auto classify = [](unsigned char ch) {
    if (std::isspace(ch)) return kSpace;
    return std::ispunct(ch) ? kPunct : kWord;
  };
  std::vector<std::string> out;
  std::string current;
  Class current_class = kSpace;
  for (unsigned char ch : text) {
    const Class cls = classify(ch);
    if (cls != current_class && !current.empty()) {
      out.push_back(current);
      current.clear();
    }
    current_class = cls;
    if (cls != kSpace) current.push_back(lowercase ? static_cast<char>(std::tolower(ch)) : static_cast<char>(ch));
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

}  // namespace fairgen::oracle
