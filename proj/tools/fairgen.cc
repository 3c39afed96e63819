// fairgen: evaluate, fingerprint and compare text generation results.
//
//   fairgen eval    --task T --corpus DIR --metrics LIST [...] --out FILE
//   fairgen hash    --task T --corpus DIR [--tokenizer K] [--tmin N]
//   fairgen compare A.evalreport B.evalreport
//
// Exit codes: 0 success, 1 configuration error, 2 data error,
// 3 compare found an incomparable metric.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairgen/error.h"
#include "fairgen/pipeline.h"
#include "fairgen/report.h"
#include "fairgen/version.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitIncomparable = 3;

int exit_code(fairgen::ErrorCategory category) {
  switch (category) {
    case fairgen::ErrorCategory::kConfig:
    case fairgen::ErrorCategory::kArgument:
      return kExitConfig;
    default:
      return kExitData;
  }
}

struct DataOptions {
  std::string task;
  std::string corpus;
  std::string tokenizer = "standard-word";
  std::string bpe_merges;
  std::size_t t_min = 1;
  bool lowercase = true;

  void add_to(CLI::App& app) {
    app.add_option("--task", task, "gen, single-turn or multi-turn")->required();
    app.add_option("--corpus", corpus, "directory with train.txt, test.txt and optional dev.txt")
        ->required();
    app.add_option("--tokenizer", tokenizer, "standard-word or bpe")->capture_default_str();
    app.add_option("--bpe-merges", bpe_merges, "merges file for the bpe tokenizer");
    app.add_option("--tmin", t_min, "minimum train count for the frequent vocabulary")
        ->capture_default_str();
    app.add_flag("--lowercase,!--no-lowercase", lowercase, "lowercase tokens (default on)");
  }

  fairgen::TokenizerSpec tokenizer_spec() const {
    fairgen::TokenizerSpec spec;
    spec.kind = fairgen::parse_tokenizer_kind(tokenizer);
    spec.lowercase = lowercase;
    if (!bpe_merges.empty()) spec.bpe_merges_path = bpe_merges;
    spec.validate();
    return spec;
  }
};

// Replaces "--config FILE" with one "--key=value" flag per entry of FILE.
// The flags go right after the subcommand name, so flags given on the
// command line take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  const auto it = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return a == "--config" || a.starts_with("--config=");
  });
  if (it == args.end()) return args;
  std::string path;
  auto last = it + 1;
  if (*it == "--config") {
    if (last == args.end()) throw fairgen::ConfigError("--config needs a file");
    path = *last++;
  } else {
    path = it->substr(std::string("--config=").size());
  }
  const auto at = static_cast<std::size_t>(it - args.begin());
  args.erase(it, last);

  std::ifstream in(path);
  if (!in) throw fairgen::ConfigError("config: cannot read " + path);
  std::vector<std::string> flags;
  for (const CLI::ConfigItem& item : CLI::ConfigTOML().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty())
      throw fairgen::ConfigError("config " + path + ": sections are not supported ('" +
                                 item.fullname() + "')");
    for (const std::string& value : item.inputs) flags.push_back("--" + item.name + "=" + value);
  }
  const std::size_t insert_at = at == 0 ? 0 : 1;
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at), flags.begin(), flags.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fingerprinted evaluation for text generation"};
  app.set_version_flag("--version", std::string(fairgen::kVersion));
  app.require_subcommand(1);

  DataOptions data;
  std::string metrics, hyps, scores, out, model_name, timestamp;
  std::uint64_t seed = 0;
  std::size_t sample_size = fairgen::kDefaultSampleSize;
  std::size_t ref_sample_size = fairgen::kDefaultSampleSize;
  unsigned threads = 0;
  CLI::App* eval = app.add_subcommand("eval", "run metrics and write an evaluation report");
  std::string config_path;
  eval->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  eval->add_option("--config", config_path, "TOML/INI file whose keys mirror the flags");
  data.add_to(*eval);
  eval->add_option("--metrics", metrics, "e.g. perplexity,bleu:4,self-bleu,fbh-bleu,fr-ppl:5,distinct:2")
      ->required();
  eval->add_option("--hyps", hyps, "generated text, one hypothesis per line");
  eval->add_option("--scores", scores, "per-token log-probabilities for the test targets (JSONL)");
  eval->add_option("--out", out, "report path (.evalreport); stdout when omitted");
  eval->add_option("--seed", seed, "seed for sampled metrics")->capture_default_str();
  eval->add_option("--sample-size", sample_size, "sentences sampled for self-BLEU and F/B-BLEU")
      ->capture_default_str();
  eval->add_option("--ref-sample-size", ref_sample_size, "test sentences sampled for F/B-BLEU")
      ->capture_default_str();
  eval->add_option("--threads", threads, "worker threads, 0 for all cores")->capture_default_str();
  eval->add_option("--model-name", model_name, "recorded in the report metadata");
  eval->add_option("--timestamp", timestamp, "recorded in the report metadata");

  DataOptions hash_data;
  bool short_hashes = false;
  CLI::App* hash = app.add_subcommand("hash", "print the data-loader hashes");
  hash->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  hash->add_option("--config", config_path, "TOML/INI file whose keys mirror the flags");
  hash_data.add_to(*hash);
  hash->add_flag("--short", short_hashes, "print 6-character prefixes");

  std::string report_a, report_b;
  CLI::App* compare = app.add_subcommand("compare", "check two reports for comparability");
  compare->add_option("report_a", report_a)->required();
  compare->add_option("report_b", report_b)->required();

  try {
    std::vector<std::string> args = expand_config(std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const fairgen::Error& e) {
    std::cerr << "fairgen: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (eval->parsed()) {
      fairgen::RunConfig config;
      config.task = fairgen::parse_task(data.task);
      config.corpus_dir = data.corpus;
      config.tokenizer = data.tokenizer_spec();
      config.t_min = data.t_min;
      config.metrics = fairgen::parse_metric_list(metrics);
      if (!hyps.empty()) config.hypotheses_path = hyps;
      if (!scores.empty()) config.scores_path = scores;
      if (!out.empty()) config.output_path = out;
      config.seed = seed;
      config.sample_size = sample_size;
      config.reference_sample_size = ref_sample_size;
      config.threads = threads;
      config.model_name = model_name;
      config.timestamp = timestamp;
      const fairgen::EvalReport report = fairgen::evaluate(config);
      if (out.empty()) std::cout << fairgen::serialize_report(report);
      return kExitOk;
    }
    if (hash->parsed()) {
      if (!std::filesystem::is_directory(hash_data.corpus))
        throw fairgen::ConfigError("corpus: " + hash_data.corpus + " is not a directory");
      const fairgen::LoadedData loaded =
          fairgen::load_data(hash_data.corpus, fairgen::parse_task(hash_data.task),
                             hash_data.tokenizer_spec(), hash_data.t_min);
      const fairgen::DataHashes& h = loaded.hashes;
      const auto show = [&](const char* name, const fairgen::HashCode& code) {
        std::cout << name << ' ' << (short_hashes ? code.short_hex() : code.hex()) << '\n';
      };
      show("raw    ", h.raw);
      show("data   ", h.data);
      show("vocab  ", h.vocab);
      show("setting", h.setting);
      show("general", h.general);
      return kExitOk;
    }
    const fairgen::ComparisonTable table =
        fairgen::compare_reports(fairgen::read_report(report_a), fairgen::read_report(report_b));
    std::cout << fairgen::format_comparison(table);
    return table.all_comparable() ? kExitOk : kExitIncomparable;
  } catch (const fairgen::Error& e) {
    std::cerr << "fairgen: " << e.what() << '\n';
    return exit_code(e.category());
  }
}
