#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "repgame/harness/config.hpp"

namespace repgame::harness {

inline constexpr int kReportSchemaVersion = 1;

/// One line of the CSV summary.
struct MetricRow {
  std::string metric;
  double estimate = 0.0;
  double ci = 0.0;
  std::size_t trials = 0;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
};

/// A declared `<metric>_min` or `<metric>_max` bound from [thresholds].
struct ThresholdResult {
  std::string metric;
  std::string kind;
  double bound = 0.0;
  double margin = 0.0;
  double estimate = 0.0;
  double ci = 0.0;
  bool pass = false;
};

struct RunReport {
  std::string scenario;
  std::string metric;
  std::uint64_t seed = 0;
  Config config;
  nlohmann::json results = nlohmann::json::object();
  std::vector<MetricRow> rows;
  std::vector<ThresholdResult> thresholds;
  std::vector<std::string> warnings;
  /// Extra files written next to the report, keyed by file name.
  std::map<std::string, std::string> artifacts;

  bool pass() const;
  const MetricRow* row(const std::string& metric) const;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

/// Shortest decimal that round-trips.
std::string format_number(double x);

std::string csv_header();
std::string csv_line(const MetricRow& row);

/// `<metric>_min = x` passes iff estimate + margin * ci >= x; `<metric>_max`
/// passes iff estimate - margin * ci <= x. `margin` defaults to 3. Unknown
/// metrics fail and add a warning.
void evaluate_thresholds(RunReport& report, const Config& c);

/// Writes report.json, summary.csv and the artifacts into `dir`.
void write_report(const RunReport& report, const std::filesystem::path& dir);

}  // namespace repgame::harness
