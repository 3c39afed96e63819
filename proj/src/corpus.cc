#include "fairgen/corpus.h"

#include <fstream>
#include <sstream>

#include "fairgen/error.h"

namespace fairgen {
namespace {

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\v\f") == std::string_view::npos;
}

std::string location(std::string_view label, std::size_t line_no) {
  return std::string(label) + ":" + std::to_string(line_no);
}

// Splits on '\n'. A trailing newline does not open an extra line.
std::vector<std::string_view> split_lines(std::string_view contents) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    const std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) {
      lines.push_back(contents.substr(pos));
      break;
    }
    lines.push_back(contents.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read corpus file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw LoadError("error reading corpus file " + path.string());
  return buffer.str();
}

}  // namespace

std::string_view to_string(Task task) {
  switch (task) {
    case Task::kGen:
      return "gen";
    case Task::kSingleTurn:
      return "single-turn";
    case Task::kMultiTurn:
      return "multi-turn";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  if (name == "gen") return Task::kGen;
  if (name == "single-turn") return Task::kSingleTurn;
  if (name == "multi-turn") return Task::kMultiTurn;
  throw ConfigError("unknown task '" + std::string(name) +
                    "' (expected gen, single-turn or multi-turn)");
}

const std::vector<RawSample>& RawCorpus::split(std::string_view name) const {
  const auto it = splits.find(name);
  if (it == splits.end()) throw ArgumentError("corpus has no split '" + std::string(name) + "'");
  return it->second;
}

const std::vector<TokenizedSample>& TokenizedCorpus::split(std::string_view name) const {
  const auto it = splits.find(name);
  if (it == splits.end()) throw ArgumentError("corpus has no split '" + std::string(name) + "'");
  return it->second;
}

std::vector<RawSample> parse_split(Task task, std::string_view contents, std::string_view label) {
  std::vector<RawSample> samples;
  const std::vector<std::string_view> lines = split_lines(contents);
  RawSample session;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    if (line.find('\r') != std::string_view::npos)
      throw ParseError(location(label, line_no) + ": carriage return found; \"\\n\" line endings are required");

    switch (task) {
      case Task::kGen:
        if (is_blank(line)) throw ParseError(location(label, line_no) + ": empty sample");
        samples.push_back({std::string(line)});
        break;

      case Task::kSingleTurn: {
        const std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
          throw ParseError(location(label, line_no) + ": expected \"post<TAB>response\"");
        if (line.find('\t', tab + 1) != std::string_view::npos)
          throw ParseError(location(label, line_no) + ": more than one TAB");
        const std::string_view post = line.substr(0, tab);
        const std::string_view response = line.substr(tab + 1);
        if (is_blank(post) || is_blank(response))
          throw ParseError(location(label, line_no) + ": empty post or response");
        samples.push_back({std::string(post), std::string(response)});
        break;
      }

      case Task::kMultiTurn:
        if (is_blank(line)) {
          if (!session.empty()) samples.push_back(std::move(session));
          session.clear();
        } else {
          session.emplace_back(line);
        }
        break;
    }
  }
  if (!session.empty()) samples.push_back(std::move(session));
  return samples;
}

RawCorpus load_raw(const std::filesystem::path& dir, Task task) {
  RawCorpus corpus;
  corpus.task = task;
  for (std::string_view split : {kTrainSplit, kDevSplit, kTestSplit}) {
    const std::filesystem::path path = dir / (std::string(split) + ".txt");
    if (split == kDevSplit && !std::filesystem::exists(path)) continue;
    if (!std::filesystem::exists(path)) throw LoadError("missing corpus file " + path.string());
    corpus.splits.emplace(split, parse_split(task, read_file(path), path.string()));
  }
  return corpus;
}

std::string serialize_raw_sample(Task task, const RawSample& sample) {
  const char separator = task == Task::kSingleTurn ? '\t' : '\n';
  std::string out;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (i > 0) out += separator;
    out += sample[i];
  }
  return out;
}

TokenizedCorpus tokenize_corpus(const RawCorpus& raw, const Tokenizer& tokenizer) {
  TokenizedCorpus out;
  out.task = raw.task;
  out.tokenizer_spec = tokenizer.spec();
  for (const auto& [name, samples] : raw.splits) {
    auto& target = out.splits[name];
    target.reserve(samples.size());
    for (const RawSample& sample : samples) {
      TokenizedSample tokenized;
      tokenized.reserve(sample.size());
      for (const std::string& sentence : sample) tokenized.push_back(tokenizer.tokenize(sentence));
      target.push_back(std::move(tokenized));
    }
  }
  return out;
}

TokenizedCorpus tokenize_corpus(const RawCorpus& raw, const TokenizerSpec& spec) {
  return tokenize_corpus(raw, Tokenizer(spec));
}

std::vector<Tokens> target_sentences(const TokenizedCorpus& corpus, std::string_view split) {
  std::vector<Tokens> out;
  for (const TokenizedSample& sample : corpus.split(split)) out.push_back(target_sentence(sample));
  return out;
}

}  // namespace fairgen
