#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fairgen/error.h"
#include "fairgen/metrics.h"

namespace fairgen {
namespace {

using json = nlohmann::ordered_json;

std::string at(std::string_view label, std::size_t line_no) {
  return std::string(label) + ":" + std::to_string(line_no);
}

double log_prob(const json& value, std::string_view where) {
  if (!value.is_number()) throw ParseError(std::string(where) + ": expected a number");
  const double lp = value.get<double>();
  if (!(lp <= 0.0)) throw ParseError(std::string(where) + ": log-probability must be <= 0");
  return lp;
}

}  // namespace

double MetricResult::value(std::string_view name) const {
  for (const auto& [key, v] : values)
    if (key == name) return v;
  throw ArgumentError("metric " + metric + " has no value named '" + std::string(name) + "'");
}

std::string serialize_token_scores(const TokenScores& scores) {
  std::string out;
  for (const SentenceScores& sentence : scores) {
    json record;
    record["tokens"] = sentence.tokens;
    json lp_token = json::array();
    for (const auto& lp : sentence.lp_token) lp_token.push_back(lp ? json(*lp) : json(nullptr));
    record["lp_token"] = std::move(lp_token);
    record["lp_unk"] = sentence.lp_unk;
    out += record.dump();
    out += '\n';
  }
  return out;
}

TokenScores parse_token_scores(std::string_view contents, std::string_view label) {
  TokenScores scores;
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = at(label, line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!record.is_object()) throw ParseError(where + ": expected a JSON object");
    for (const char* key : {"tokens", "lp_token", "lp_unk"})
      if (!record.contains(key) || !record[key].is_array())
        throw ParseError(where + ": missing array field '" + key + "'");

    SentenceScores sentence;
    for (const json& token : record["tokens"]) {
      if (!token.is_string()) throw ParseError(where + ": tokens must be strings");
      sentence.tokens.push_back(token.get<std::string>());
    }
    for (const json& lp : record["lp_token"])
      sentence.lp_token.push_back(lp.is_null() ? std::nullopt
                                               : std::optional<double>(log_prob(lp, where)));
    for (const json& lp : record["lp_unk"]) sentence.lp_unk.push_back(log_prob(lp, where));

    if (sentence.lp_token.size() != sentence.tokens.size() ||
        sentence.lp_unk.size() != sentence.tokens.size())
      throw ParseError(where + ": tokens, lp_token and lp_unk differ in length");
    if (sentence.tokens.empty() || sentence.tokens.back() != kEosToken)
      throw ParseError(where + ": tokens must end with <eos>");
    scores.push_back(std::move(sentence));
  }
  return scores;
}

TokenScores read_token_scores(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read token scores file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_token_scores(buffer.str(), path.string());
}

void write_token_scores(const TokenScores& scores, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write token scores file " + path.string());
  out << serialize_token_scores(scores);
}

}  // namespace fairgen
