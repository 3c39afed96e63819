#include "fairgen/batch.h"

#include <algorithm>

#include "fairgen/error.h"
#include "fairgen/random.h"

namespace fairgen {

std::vector<Batch> make_batches(const TokenizedCorpus& corpus, const Vocab& vocab,
                                std::string_view split, std::size_t batch_size,
                                std::optional<std::uint64_t> shuffle_seed) {
  if (batch_size == 0) throw ArgumentError("batch_size must be positive");
  const std::vector<TokenizedSample>& samples = corpus.split(split);

  std::vector<std::size_t> order;
  if (shuffle_seed) {
    order = seeded_permutation(samples.size(), *shuffle_seed);
  } else {
    order.resize(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  }

  std::vector<Batch> batches;
  for (std::size_t begin = 0; begin < order.size(); begin += batch_size) {
    const std::size_t end = std::min(order.size(), begin + batch_size);
    Batch batch;
    std::vector<std::vector<TokenId>> rows;
    for (std::size_t k = begin; k < end; ++k) {
      std::vector<TokenId> ids =
          to_ids(target_sentence(samples[order[k]]), vocab, MappingMode::kTrain);
      ids.push_back(Vocab::kEosId);
      batch.sample_indices.push_back(order[k]);
      batch.lengths.push_back(ids.size());
      rows.push_back(std::move(ids));
    }
    batch.ids.rows = rows.size();
    batch.ids.cols = *std::max_element(batch.lengths.begin(), batch.lengths.end());
    batch.ids.values.assign(batch.ids.rows * batch.ids.cols, Vocab::kPadId);
    for (std::size_t r = 0; r < rows.size(); ++r)
      std::copy(rows[r].begin(), rows[r].end(), batch.ids.values.begin() + r * batch.ids.cols);
    batches.push_back(std::move(batch));
  }
  return batches;
}

}  // namespace fairgen
