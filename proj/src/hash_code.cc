#include "fairgen/hash_code.h"

#include <openssl/evp.h>

#include <algorithm>

#include "fairgen/error.h"

namespace fairgen {
namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

HashCode::HashCode(const Digest& digest) : digest_(digest) {
  hex_.reserve(kHexLength);
  for (std::uint8_t byte : digest_) {
    hex_.push_back(kHexDigits[byte >> 4]);
    hex_.push_back(kHexDigits[byte & 0x0f]);
  }
}

bool HashCode::is_valid_hex(std::string_view hex) {
  return hex.size() == kHexLength &&
         std::all_of(hex.begin(), hex.end(), [](char c) { return hex_value(c) >= 0; });
}

HashCode HashCode::from_hex(std::string_view hex) {
  if (!is_valid_hex(hex))
    throw ArgumentError("not a 64-character lowercase hex hash: '" + std::string(hex) + "'");
  Digest digest{};
  for (std::size_t i = 0; i < digest.size(); ++i)
    digest[i] = static_cast<std::uint8_t>(hex_value(hex[2 * i]) << 4 | hex_value(hex[2 * i + 1]));
  return HashCode(digest);
}

struct Sha256::Context {
  EVP_MD_CTX* ctx = nullptr;
  ~Context() { EVP_MD_CTX_free(ctx); }
};

Sha256::Sha256() : context_(std::make_unique<Context>()) {
  context_->ctx = EVP_MD_CTX_new();
  if (context_->ctx == nullptr || EVP_DigestInit_ex(context_->ctx, EVP_sha256(), nullptr) != 1)
    throw ConfigError("SHA-256 initialisation failed");
}

Sha256::~Sha256() = default;
Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

Sha256& Sha256::update(std::string_view bytes) {
  if (EVP_DigestUpdate(context_->ctx, bytes.data(), bytes.size()) != 1)
    throw ConfigError("SHA-256 update failed");
  return *this;
}

Sha256& Sha256::update(std::span<const std::uint8_t> bytes) {
  if (EVP_DigestUpdate(context_->ctx, bytes.data(), bytes.size()) != 1)
    throw ConfigError("SHA-256 update failed");
  return *this;
}

HashCode Sha256::finish() {
  HashCode::Digest digest{};
  unsigned int length = 0;
  if (EVP_DigestFinal_ex(context_->ctx, digest.data(), &length) != 1 || length != digest.size())
    throw ConfigError("SHA-256 finalisation failed");
  return HashCode(digest);
}

HashCode sha256(std::string_view bytes) { return Sha256().update(bytes).finish(); }

HashCode combine_unordered(std::vector<HashCode::Digest> digests) {
  std::sort(digests.begin(), digests.end());
  Sha256 hasher;
  for (const auto& digest : digests) hasher.update(std::span<const std::uint8_t>(digest));
  return hasher.finish();
}

CanonicalWriter& CanonicalWriter::field(std::string_view bytes) {
  out_ += std::to_string(bytes.size());
  out_ += ':';
  out_ += bytes;
  out_ += ',';
  return *this;
}

CanonicalWriter& CanonicalWriter::field(std::uint64_t value) { return field(std::to_string(value)); }

CanonicalWriter& CanonicalWriter::list(std::span<const std::string> items) {
  field(static_cast<std::uint64_t>(items.size()));
  for (const std::string& item : items) field(item);
  return *this;
}

}  // namespace fairgen
