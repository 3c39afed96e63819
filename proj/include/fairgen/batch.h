#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fairgen/corpus.h"
#include "fairgen/vocabulary.h"

namespace fairgen {

// Row-major matrix of token ids.
struct IdMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<TokenId> values;

  TokenId operator()(std::size_t row, std::size_t col) const { return values[row * cols + col]; }
  TokenId& operator()(std::size_t row, std::size_t col) { return values[row * cols + col]; }
};

// Padded target sentences of consecutive samples. lengths[r] counts the
// appended <eos>; positions at or beyond lengths[r] hold <pad>.
struct Batch {
  std::vector<std::size_t> sample_indices;
  IdMatrix ids;
  std::vector<std::size_t> lengths;
};

// Packs the target sentence of every sample in `split` (train-mode ids, so
// tokens outside F become <unk>). With a shuffle seed the sample order is the
// seeded permutation; otherwise file order. Throws ArgumentError for
// batch_size == 0.
std::vector<Batch> make_batches(const TokenizedCorpus& corpus, const Vocab& vocab,
                                std::string_view split, std::size_t batch_size,
                                std::optional<std::uint64_t> shuffle_seed = std::nullopt);

}  // namespace fairgen
