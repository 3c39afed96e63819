#include "fairgen/pipeline.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "fairgen/error.h"
#include "fairgen/version.h"

namespace fairgen {
namespace {

struct MetricName {
  std::string_view name;
  MetricKind kind;
  int default_parameter;
  int min_parameter;
  int max_parameter;
};

constexpr MetricName kMetricNames[] = {
    {"perplexity", MetricKind::kPerplexity, 0, 0, 0},
    {"perplexity-original", MetricKind::kPerplexityOriginal, 0, 0, 0},
    {"bleu", MetricKind::kBleu, kDefaultBleuOrder, 1, 127},
    {"self-bleu", MetricKind::kSelfBleu, kDefaultBleuOrder, 1, 127},
    {"fbh-bleu", MetricKind::kFbhBleu, kDefaultBleuOrder, 1, 127},
    {"fr-ppl", MetricKind::kFrPerplexity, NGramModel::kDefaultOrder, 1, 64},
    {"distinct", MetricKind::kDistinct, 2, 1, 64},
};

const MetricName& lookup(MetricKind kind) {
  for (const MetricName& entry : kMetricNames)
    if (entry.kind == kind) return entry;
  throw ArgumentError("unknown metric kind");
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1);
}

void require_exists(const std::filesystem::path& path, std::string_view field) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec))
    throw ConfigError(std::string(field) + ": " + path.string() + " does not exist");
}

std::vector<Tokens> standardized(const Tokenizer& tokenizer, const std::vector<Tokens>& sentences) {
  std::vector<Tokens> out;
  out.reserve(sentences.size());
  for (const Tokens& sentence : sentences) out.push_back(tokenizer.standardize(sentence));
  return out;
}

}  // namespace

std::vector<MetricRequest> parse_metric_list(std::string_view text) {
  std::vector<MetricRequest> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view item = trim(text.substr(start, comma - start));
    start = comma + 1;
    if (item.empty()) throw ConfigError("metrics: empty entry in '" + std::string(text) + "'");

    const std::size_t colon = item.find(':');
    const std::string_view name = item.substr(0, colon);
    const auto entry = std::find_if(std::begin(kMetricNames), std::end(kMetricNames),
                                    [&](const MetricName& m) { return m.name == name; });
    if (entry == std::end(kMetricNames))
      throw ConfigError("metrics: unknown metric '" + std::string(name) + "'");

    MetricRequest request{entry->kind, entry->default_parameter};
    if (colon != std::string_view::npos) {
      const std::string_view arg = item.substr(colon + 1);
      if (entry->max_parameter == 0)
        throw ConfigError("metrics: '" + std::string(name) + "' takes no parameter");
      const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), request.parameter);
      if (ec != std::errc() || ptr != arg.data() + arg.size() || arg.empty())
        throw ConfigError("metrics: bad parameter in '" + std::string(item) + "'");
      if (request.parameter < entry->min_parameter || request.parameter > entry->max_parameter)
        throw ConfigError("metrics: parameter of '" + std::string(name) + "' must be in [" +
                          std::to_string(entry->min_parameter) + ", " +
                          std::to_string(entry->max_parameter) + "]");
    }
    out.push_back(request);
  }
  return out;
}

std::string to_string(const MetricRequest& request) {
  const MetricName& entry = lookup(request.kind);
  std::string out(entry.name);
  if (entry.max_parameter != 0) out += ":" + std::to_string(request.parameter);
  return out;
}

bool needs_hypotheses(const MetricRequest& request) {
  return request.kind != MetricKind::kPerplexity && request.kind != MetricKind::kPerplexityOriginal;
}

bool needs_scores(const MetricRequest& request) { return !needs_hypotheses(request); }

void RunConfig::validate() const {
  if (t_min < 1) throw ConfigError("tmin: must be at least 1");
  tokenizer.validate();
  if (tokenizer.bpe_merges_path) require_exists(*tokenizer.bpe_merges_path, "bpe-merges");
  require_exists(corpus_dir, "corpus");
  if (metrics.empty()) throw ConfigError("metrics: no metric selected");

  std::set<std::string> seen;
  bool hyps = false, scores = false;
  for (const MetricRequest& request : metrics) {
    if (!seen.insert(to_string(request)).second)
      throw ConfigError("metrics: '" + to_string(request) + "' selected twice");
    hyps = hyps || needs_hypotheses(request);
    scores = scores || needs_scores(request);
  }
  if (sample_size == 0) throw ConfigError("sample-size: must be positive");
  if (reference_sample_size == 0) throw ConfigError("ref-sample-size: must be positive");
  if (hyps) {
    if (!hypotheses_path) throw ConfigError("hyps: required by the selected metrics");
    require_exists(*hypotheses_path, "hyps");
  }
  if (scores) {
    if (!scores_path) throw ConfigError("scores: required by the selected metrics");
    require_exists(*scores_path, "scores");
  }
}

LoadedData load_data(const std::filesystem::path& corpus_dir, Task task, const TokenizerSpec& spec,
                     std::size_t t_min) {
  RawCorpus raw = load_raw(corpus_dir, task);
  TokenizedCorpus corpus = tokenize_corpus(raw, spec);
  Vocab vocab = build_vocab(corpus, t_min);
  DataHashes hashes = compute_data_hashes(raw, corpus, vocab);
  return LoadedData{std::move(raw), std::move(corpus), std::move(vocab), std::move(hashes)};
}

std::vector<std::string> read_hypotheses(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read hypotheses " + path.string());
  std::vector<std::string> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find('\r') != std::string::npos)
      throw ParseError(path.string() + ":" + std::to_string(number) + ": carriage return");
    out.push_back(std::move(line));
  }
  return out;
}

EvalReport evaluate(const RunConfig& config, const EvalInputs& inputs) {
  config.validate();
  const LoadedData data = load_data(config.corpus_dir, config.task, config.tokenizer, config.t_min);
  const Tokenizer tokenizer(config.tokenizer);
  const std::vector<Tokens> test_targets = target_sentences(data.corpus, kTestSplit);

  std::optional<std::vector<Tokens>> hypotheses;
  std::optional<std::vector<Tokens>> references;
  std::optional<TokenScores> scores;
  const Tokenizer standard(TokenizerSpec::standard_word());
  for (const MetricRequest& request : config.metrics) {
    if (needs_hypotheses(request) && !hypotheses) {
      const std::vector<std::string> lines =
          inputs.hypotheses ? *inputs.hypotheses : read_hypotheses(*config.hypotheses_path);
      hypotheses.emplace();
      for (const std::string& line : lines) hypotheses->push_back(standard.tokenize(line));
      references = standardized(tokenizer, test_targets);
    }
    if (needs_scores(request) && !scores)
      scores = inputs.scores ? *inputs.scores : read_token_scores(*config.scores_path);
  }

  EvalReport report{std::string(kVersion), config.task, data.hashes, {}, {}, {}, {}};
  for (const MetricRequest& request : config.metrics) {
    switch (request.kind) {
      case MetricKind::kPerplexity:
        report.metrics.push_back(perplexity(test_targets, *scores, data.vocab));
        break;
      case MetricKind::kPerplexityOriginal:
        report.metrics.push_back(
            perplexity(test_targets, *scores, data.vocab, PerplexityVariant::kOriginal));
        break;
      case MetricKind::kBleu:
        if (hypotheses->size() != references->size())
          throw InputError("hyps: " + std::to_string(hypotheses->size()) + " hypotheses for " +
                           std::to_string(references->size()) + " test samples");
        report.metrics.push_back(bleu(*hypotheses, *references, request.parameter));
        break;
      case MetricKind::kSelfBleu:
        report.metrics.push_back(self_bleu(
            *hypotheses, SamplingOptions{config.sample_size, config.seed, config.threads},
            request.parameter));
        break;
      case MetricKind::kFbhBleu:
        report.metrics.push_back(fbh_bleu(*hypotheses, *references,
                                          FbhSamplingOptions{config.sample_size,
                                                             config.reference_sample_size,
                                                             config.seed, config.threads},
                                          request.parameter));
        break;
      case MetricKind::kFrPerplexity:
        report.metrics.push_back(fr_perplexity(*hypotheses, *references, request.parameter));
        break;
      case MetricKind::kDistinct:
        report.metrics.push_back(distinct_n(*hypotheses, request.parameter));
        break;
    }
  }

  if (!config.model_name.empty()) report.metadata.emplace_back("model", config.model_name);
  if (!config.timestamp.empty()) report.metadata.emplace_back("timestamp", config.timestamp);
  if (config.output_path) write_report(report, *config.output_path);
  return report;
}

}  // namespace fairgen
