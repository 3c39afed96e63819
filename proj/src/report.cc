#include "fairgen/report.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fairgen/error.h"

namespace fairgen {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kHashNames[] = {"raw", "data", "vocab", "setting", "general"};

const HashCode& hash_by_name(const DataHashes& hashes, std::string_view name) {
  if (name == "raw") return hashes.raw;
  if (name == "data") return hashes.data;
  if (name == "vocab") return hashes.vocab;
  if (name == "setting") return hashes.setting;
  return hashes.general;
}

class Reader {
 public:
  explicit Reader(std::string_view label) : label_(label) {}

  [[noreturn]] void fail(const std::string& where, const std::string& why) const {
    throw ParseError(label_ + ": " + where + ": " + why);
  }

  const json& member(const json& object, const std::string& key, const std::string& where) const {
    if (!object.is_object()) fail(where, "expected an object");
    const auto it = object.find(key);
    if (it == object.end()) fail(where, "missing field '" + key + "'");
    return *it;
  }

  std::string string(const json& object, const std::string& key, const std::string& where) const {
    const json& value = member(object, key, where);
    if (!value.is_string()) fail(where + "." + key, "expected a string");
    return value.get<std::string>();
  }

  HashCode hash(const json& object, const std::string& key, const std::string& where) const {
    const std::string hex = string(object, key, where);
    if (!HashCode::is_valid_hex(hex)) fail(where + "." + key, "not a 64-character lowercase hex hash");
    return HashCode::from_hex(hex);
  }

 private:
  std::string label_;
};

UnknownFields collect_unknown(const json& object, std::initializer_list<std::string_view> known) {
  UnknownFields out;
  for (const auto& [key, value] : object.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) out.emplace_back(key, value.dump());
  return out;
}

}  // namespace

std::string serialize_report(const EvalReport& report) {
  json root;
  root["format"] = std::string(kReportFormat);
  root["format_version"] = kReportFormatVersion;
  root["toolkit_version"] = report.toolkit_version;
  root["task"] = std::string(to_string(report.task));

  json hashes;
  for (const char* name : kHashNames) hashes[name] = hash_by_name(report.data_hashes, name).hex();
  root["data_hashes"] = std::move(hashes);

  json metrics = json::array();
  std::set<std::string> seen;
  for (std::size_t i = 0; i < report.metrics.size(); ++i) {
    const MetricResult& metric = report.metrics[i];
    if (!seen.insert(metric.metric).second)
      throw ArgumentError("duplicate metric '" + metric.metric + "' in report");
    json entry;
    entry["name"] = metric.metric;
    entry["n"] = metric.n ? json(*metric.n) : json(nullptr);
    json values = json::object();
    for (const auto& [name, value] : metric.values) {
      if (!std::isfinite(value))
        throw ArgumentError("metric '" + metric.metric + "' has a non-finite value");
      values[name] = value;
    }
    entry["values"] = std::move(values);
    entry["hash"] = metric.hash.hex();
    entry["degenerate"] = metric.degenerate;
    if (i < report.unknown_metric_fields.size())
      for (const auto& [key, text] : report.unknown_metric_fields[i]) entry[key] = json::parse(text);
    metrics.push_back(std::move(entry));
  }
  root["metrics"] = std::move(metrics);

  json metadata = json::object();
  for (const auto& [key, value] : report.metadata) metadata[key] = value;
  root["metadata"] = std::move(metadata);

  for (const auto& [key, text] : report.unknown_fields) root[key] = json::parse(text);
  return root.dump(2) + "\n";
}

EvalReport parse_report(std::string_view contents, std::string_view label) {
  const Reader reader(label);
  json root;
  try {
    root = json::parse(contents);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(label) + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!root.is_object()) reader.fail("$", "expected an object");

  if (reader.string(root, "format", "$") != kReportFormat) reader.fail("$.format", "unknown report format");
  const json& version = reader.member(root, "format_version", "$");
  if (!version.is_number_integer() || version.get<int>() != kReportFormatVersion)
    reader.fail("$.format_version", "unsupported format version");

  std::string toolkit_version = reader.string(root, "toolkit_version", "$");
  Task task = Task::kGen;
  try {
    task = parse_task(reader.string(root, "task", "$"));
  } catch (const ConfigError& e) {
    reader.fail("$.task", e.what());
  }

  const json& hashes = reader.member(root, "data_hashes", "$");
  DataHashes data_hashes{
      reader.hash(hashes, "raw", "$.data_hashes"), reader.hash(hashes, "data", "$.data_hashes"),
      reader.hash(hashes, "vocab", "$.data_hashes"), reader.hash(hashes, "setting", "$.data_hashes"),
      reader.hash(hashes, "general", "$.data_hashes")};
  const DataHashes& h = data_hashes;
  if (general_hash(h.raw, h.data, h.vocab, h.setting) != h.general)
    reader.fail("$.data_hashes.general", "does not match the raw/data/vocab/setting hashes");

  EvalReport report{std::move(toolkit_version), task, std::move(data_hashes), {}, {}, {}, {}};

  const json& metrics = reader.member(root, "metrics", "$");
  if (!metrics.is_array()) reader.fail("$.metrics", "expected an array");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const std::string where = "$.metrics[" + std::to_string(i) + "]";
    const json& entry = metrics[i];
    const std::string name = reader.string(entry, "name", where);
    if (!seen.insert(name).second) reader.fail(where, "duplicate metric '" + name + "'");

    std::optional<int> n;
    const json& n_value = reader.member(entry, "n", where);
    if (n_value.is_number_integer())
      n = n_value.get<int>();
    else if (!n_value.is_null())
      reader.fail(where + ".n", "expected an integer or null");

    std::vector<std::pair<std::string, double>> values;
    const json& values_json = reader.member(entry, "values", where);
    if (!values_json.is_object()) reader.fail(where + ".values", "expected an object");
    for (const auto& [key, value] : values_json.items()) {
      if (!value.is_number()) reader.fail(where + ".values." + key, "expected a number");
      values.emplace_back(key, value.get<double>());
    }

    HashCode hash = reader.hash(entry, "hash", where);
    const json& degenerate = reader.member(entry, "degenerate", where);
    if (!degenerate.is_boolean()) reader.fail(where + ".degenerate", "expected a boolean");

    report.metrics.push_back(
        MetricResult{name, std::move(values), std::move(hash), n, degenerate.get<bool>()});
    report.unknown_metric_fields.push_back(
        collect_unknown(entry, {"name", "n", "values", "hash", "degenerate"}));
  }

  const json& metadata = reader.member(root, "metadata", "$");
  if (!metadata.is_object()) reader.fail("$.metadata", "expected an object");
  for (const auto& [key, value] : metadata.items()) {
    if (!value.is_string()) reader.fail("$.metadata." + key, "expected a string");
    report.metadata.emplace_back(key, value.get<std::string>());
  }

  report.unknown_fields = collect_unknown(
      root, {"format", "format_version", "toolkit_version", "task", "data_hashes", "metrics", "metadata"});
  return report;
}

void write_report(const EvalReport& report, const std::filesystem::path& path) {
  const std::string contents = serialize_report(report);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write report " + path.string());
  out << contents;
  if (!out) throw LoadError("error writing report " + path.string());
}

EvalReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read report " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_report(buffer.str(), path.string());
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::kComparable ? "COMPARABLE" : "INCOMPARABLE";
}

bool ComparisonTable::all_comparable() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const MetricComparison& row) { return row.verdict == Verdict::kComparable; });
}

ComparisonTable compare_reports(const EvalReport& a, const EvalReport& b) {
  ComparisonTable table;
  for (const char* name : kHashNames)
    if (hash_by_name(a.data_hashes, name) != hash_by_name(b.data_hashes, name))
      table.differing_data_hashes.emplace_back(name);

  std::map<std::string, const MetricResult*> in_b;
  for (const MetricResult& metric : b.metrics) in_b.emplace(metric.metric, &metric);

  for (const MetricResult& metric : a.metrics) {
    const auto it = in_b.find(metric.metric);
    if (it == in_b.end()) continue;
    MetricComparison row;
    row.metric = metric.metric;
    row.hash_a = metric.hash.hex();
    row.hash_b = it->second->hash.hex();
    if (row.hash_a == row.hash_b) {
      row.verdict = Verdict::kComparable;
    } else {
      row.verdict = Verdict::kIncomparable;
      row.diagnosis = "metric hash " + metric.hash.short_hex() + " != " + it->second->hash.short_hex();
    }
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const MetricComparison& x, const MetricComparison& y) { return x.metric < y.metric; });
  return table;
}

std::string format_comparison(const ComparisonTable& table) {
  std::ostringstream out;
  out << "data hashes: ";
  if (table.differing_data_hashes.empty()) {
    out << "all equal\n";
  } else {
    out << "differ in";
    for (const std::string& name : table.differing_data_hashes) out << ' ' << name;
    out << '\n';
  }
  if (table.rows.empty()) {
    out << "no shared metrics\n";
    return out.str();
  }
  std::size_t width = 6;
  for (const auto& row : table.rows) width = std::max(width, row.metric.size());
  out << std::left << std::setw(static_cast<int>(width)) << "metric" << "  "
      << std::setw(12) << "verdict" << "  hash_a  hash_b\n";
  for (const auto& row : table.rows) {
    out << std::left << std::setw(static_cast<int>(width)) << row.metric << "  "
        << std::setw(12) << to_string(row.verdict) << "  " << row.hash_a.substr(0, 6) << "  "
        << row.hash_b.substr(0, 6) << '\n';
  }
  return out.str();
}

}  // namespace fairgen
