#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairgen/corpus.h"
#include "fairgen/hashing.h"
#include "fairgen/metrics.h"

namespace fairgen {

inline constexpr std::string_view kReportFormat = "fairgen-evalreport";
inline constexpr int kReportFormatVersion = 1;
inline constexpr std::string_view kReportExtension = ".evalreport";

// Raw JSON text of a member the reader did not recognise.
using UnknownFields = std::vector<std::pair<std::string, std::string>>;

struct EvalReport {
  std::string toolkit_version;
  Task task = Task::kGen;
  DataHashes data_hashes;
  std::vector<MetricResult> metrics;
  std::vector<std::pair<std::string, std::string>> metadata;
  UnknownFields unknown_fields;
  // Parallel to `metrics`; may be shorter.
  std::vector<UnknownFields> unknown_metric_fields;
};

// Pretty-printed JSON with a fixed member order; unknown members follow the
// known ones in the order they were read. write(read(file)) reproduces any
// file this writer produced byte for byte.
std::string serialize_report(const EvalReport& report);
// Throws ParseError (with the location) for malformed input, a missing or
// invalid hash, duplicate metric names, or a general hash that does not match
// its four components.
EvalReport parse_report(std::string_view contents, std::string_view label);

void write_report(const EvalReport& report, const std::filesystem::path& path);
EvalReport read_report(const std::filesystem::path& path);

enum class Verdict { kComparable, kIncomparable };
std::string_view to_string(Verdict verdict);

struct MetricComparison {
  std::string metric;
  Verdict verdict = Verdict::kComparable;
  std::string hash_a;
  std::string hash_b;
  std::string diagnosis;
};

struct ComparisonTable {
  // Metrics present in both reports, sorted by name.
  std::vector<MetricComparison> rows;
  // Names of the data-loader hashes that differ ("raw", "data", "vocab",
  // "setting", "general").
  std::vector<std::string> differing_data_hashes;

  // Vacuously true when the reports share no metric.
  bool all_comparable() const;
};

// A metric is comparable iff both reports carry the same hash for it.
ComparisonTable compare_reports(const EvalReport& a, const EvalReport& b);

// Human-readable table with 6-character hash prefixes.
std::string format_comparison(const ComparisonTable& table);

}  // namespace fairgen
