#include "fairgen/tokenizer.h"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <utility>

#include "fairgen/bpe.h"
#include "fairgen/error.h"

namespace fairgen {
namespace {

std::string to_utf8(const icu::UnicodeString& u) {
  std::string out;
  u.toUTF8String(out);
  return out;
}

icu::UnicodeString from_utf8(std::string_view text) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
}

icu::UnicodeString nfc(const icu::UnicodeString& u) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw ConfigError("ICU NFC normalizer unavailable");
  icu::UnicodeString out = normalizer->normalize(u, status);
  if (U_FAILURE(status)) throw ArgumentError("NFC normalization failed");
  return out;
}

std::string nfc(std::string_view text) { return to_utf8(nfc(from_utf8(text))); }

std::string lowercase(std::string_view text) {
  icu::UnicodeString u = from_utf8(text);
  u.toLower(icu::Locale::getRoot());
  return to_utf8(nfc(u));
}

bool is_punct(UChar32 c) {
  return c >= 0 && (U_GET_GC_MASK(c) & (U_GC_P_MASK | U_GC_S_MASK)) != 0;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> chunks;
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t start = -1;
  int32_t i = 0;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c >= 0 && u_isUWhiteSpace(c)) {
      if (start >= 0) chunks.push_back(text.substr(start, at - start));
      start = -1;
    } else if (start < 0) {
      start = at;
    }
  }
  if (start >= 0) chunks.push_back(text.substr(start));
  return chunks;
}

// Invokes fn(segment, is_unk) over a whitespace-free chunk, cutting out each
// literal "<unk>" as its own segment.
template <class Fn>
void for_each_unk_segment(std::string_view chunk, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < chunk.size()) {
    const std::size_t hit = chunk.find(kUnkToken, pos);
    if (hit == std::string_view::npos) {
      fn(chunk.substr(pos), false);
      return;
    }
    if (hit > pos) fn(chunk.substr(pos, hit - pos), false);
    fn(kUnkToken, true);
    pos = hit + kUnkToken.size();
  }
}

void split_punct_runs(std::string_view segment, bool lower, Tokens& out) {
  const auto* s = reinterpret_cast<const uint8_t*>(segment.data());
  const auto length = static_cast<int32_t>(segment.size());
  int32_t start = 0;
  int32_t i = 0;
  bool run_is_punct = false;
  auto emit = [&](int32_t end) {
    if (end <= start) return;
    const std::string_view piece = segment.substr(start, end - start);
    out.push_back(lower ? lowercase(piece) : std::string(piece));
  };
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    const bool punct = is_punct(c);
    if (at == 0) {
      run_is_punct = punct;
    } else if (punct != run_is_punct) {
      emit(at);
      start = at;
      run_is_punct = punct;
    }
  }
  emit(length);
}

Tokens tokenize_standard(std::string_view text, bool lower) {
  const std::string normalized = nfc(text);
  Tokens out;
  for (std::string_view chunk : split_whitespace(normalized)) {
    for_each_unk_segment(chunk, [&](std::string_view segment, bool is_unk) {
      if (is_unk)
        out.emplace_back(kUnkToken);
      else
        split_punct_runs(segment, lower, out);
    });
  }
  return out;
}

Tokens tokenize_bpe(std::string_view text, bool lower, const BpeMerges& merges) {
  const std::string normalized = lower ? lowercase(text) : nfc(text);
  Tokens out;
  for (std::string_view chunk : split_whitespace(normalized)) {
    for_each_unk_segment(chunk, [&](std::string_view segment, bool is_unk) {
      if (is_unk) {
        out.emplace_back(kUnkToken);
        return;
      }
      std::vector<std::string> pieces = merges.apply(segment);
      for (std::size_t k = 0; k + 1 < pieces.size(); ++k) pieces[k] += kBpeContinuation;
      for (auto& piece : pieces) out.push_back(std::move(piece));
    });
  }
  return out;
}

}  // namespace

std::string_view to_string(TokenizerKind kind) {
  switch (kind) {
    case TokenizerKind::kStandardWord:
      return "standard-word";
    case TokenizerKind::kBpe:
      return "bpe";
  }
  return "unknown";
}

TokenizerKind parse_tokenizer_kind(std::string_view name) {
  if (name == "standard-word" || name == "standard") return TokenizerKind::kStandardWord;
  if (name == "bpe") return TokenizerKind::kBpe;
  throw ConfigError("unknown tokenizer kind '" + std::string(name) +
                    "' (expected standard-word or bpe)");
}

TokenizerSpec TokenizerSpec::standard_word(bool lowercase) {
  return TokenizerSpec{TokenizerKind::kStandardWord, lowercase, std::nullopt};
}

TokenizerSpec TokenizerSpec::bpe(std::filesystem::path merges, bool lowercase) {
  return TokenizerSpec{TokenizerKind::kBpe, lowercase, std::move(merges)};
}

void TokenizerSpec::validate() const {
  if (kind == TokenizerKind::kBpe && !bpe_merges_path)
    throw ConfigError("bpe tokenizer requires a merges file");
  if (kind == TokenizerKind::kStandardWord && bpe_merges_path)
    throw ConfigError("standard-word tokenizer does not take a merges file");
}

Tokenizer::Tokenizer(TokenizerSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if (spec_.kind == TokenizerKind::kBpe)
    merges_ = std::make_shared<const BpeMerges>(BpeMerges::load(*spec_.bpe_merges_path));
}

Tokens Tokenizer::tokenize(std::string_view text) const {
  if (spec_.kind == TokenizerKind::kBpe) return tokenize_bpe(text, spec_.lowercase, *merges_);
  return tokenize_standard(text, spec_.lowercase);
}

std::string Tokenizer::detokenize(const Tokens& tokens) const {
  if (spec_.kind != TokenizerKind::kBpe) return fairgen::detokenize(tokens);
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& token = tokens[i];
    const bool continues = i + 1 < tokens.size() && token.size() > kBpeContinuation.size() &&
                           token.ends_with(kBpeContinuation);
    if (continues) {
      out.append(token, 0, token.size() - kBpeContinuation.size());
    } else {
      out += token;
      if (i + 1 < tokens.size()) out += ' ';
    }
  }
  return out;
}

Tokens Tokenizer::standardize(const Tokens& tokens) const {
  return tokenize_standard(detokenize(tokens), true);
}

Tokens tokenize(std::string_view text, const TokenizerSpec& spec) {
  return Tokenizer(spec).tokenize(text);
}

std::string detokenize(const Tokens& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

Tokens standard_retokenize(const Tokens& tokens) {
  return tokenize_standard(detokenize(tokens), true);
}

}  // namespace fairgen
