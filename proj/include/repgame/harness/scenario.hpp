#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "repgame/harness/config.hpp"
#include "repgame/harness/report.hpp"

namespace repgame::harness {

/// Command-line overrides applied on top of the config file.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> parallelism;
  std::optional<std::string> metric;
};

/// Applies the overrides and checks that every referenced kind resolves, so
/// config errors surface before any file is written. Throws ConfigError.
Config prepare(Config c, const RunOptions& options);

/// Resolves and runs the config's metric. Throws ConfigError on bad input.
RunReport run_scenario(const Config& config, const RunOptions& options = {});

struct SweepPoint {
  std::vector<std::pair<std::string, std::string>> coordinates;
  std::optional<RunReport> report;
  std::string error;
};

struct SweepResult {
  std::vector<std::string> axes;
  std::vector<SweepPoint> points;

  bool pass() const;
  /// Grid coordinates, then the summary columns, then pass and error.
  std::string to_csv() const;
};

/// Cartesian product over the [sweep] section, whose keys are `section.key`
/// and whose values are lists. An empty or missing grid runs the config once.
/// A failing point is recorded and the sweep moves on.
SweepResult sweep(const Config& config, const RunOptions& options = {});

/// Writes one directory per point plus sweep.csv into `dir`.
void write_sweep(const SweepResult& result, const std::filesystem::path& dir);

}  // namespace repgame::harness
