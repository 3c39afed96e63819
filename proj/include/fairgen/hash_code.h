#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fairgen {

// A SHA-256 fingerprint, kept both as raw bytes and as 64 lowercase hex chars.
class HashCode {
 public:
  using Digest = std::array<std::uint8_t, 32>;
  static constexpr std::size_t kHexLength = 64;
  static constexpr std::size_t kShortLength = 6;

  explicit HashCode(const Digest& digest);

  // Throws ArgumentError unless `hex` is 64 lowercase hex characters.
  static HashCode from_hex(std::string_view hex);
  static bool is_valid_hex(std::string_view hex);

  const Digest& digest() const { return digest_; }
  const std::string& hex() const { return hex_; }
  std::string short_hex() const { return hex_.substr(0, kShortLength); }

  bool operator==(const HashCode& other) const { return digest_ == other.digest_; }

 private:
  Digest digest_;
  std::string hex_;
};

// Incremental SHA-256.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(Sha256&&) noexcept;
  Sha256& operator=(Sha256&&) noexcept;

  Sha256& update(std::string_view bytes);
  Sha256& update(std::span<const std::uint8_t> bytes);
  HashCode finish();

 private:
  struct Context;
  std::unique_ptr<Context> context_;
};

HashCode sha256(std::string_view bytes);

// Hash of a multiset of digests: sort them byte-wise, hash the concatenation.
// Independent of the order in which the digests were produced.
HashCode combine_unordered(std::vector<HashCode::Digest> digests);

// Builds unambiguous byte strings from typed fields. Every field is written
// as a netstring "<length>:<bytes>,", so no two distinct field sequences
// share an encoding.
class CanonicalWriter {
 public:
  CanonicalWriter& field(std::string_view bytes);
  CanonicalWriter& field(std::uint64_t value);
  CanonicalWriter& field(const HashCode& hash) { return field(std::string_view(hash.hex())); }
  // Count followed by each element.
  CanonicalWriter& list(std::span<const std::string> items);

  const std::string& bytes() const { return out_; }
  HashCode hash() const { return sha256(out_); }

 private:
  std::string out_;
};

}  // namespace fairgen
