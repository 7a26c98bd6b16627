#include "repgame/harness/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace repgame::harness {

bool RunReport::pass() const {
  for (const auto& t : thresholds) {
    if (!t.pass) return false;
  }
  return true;
}

const MetricRow* RunReport::row(const std::string& name) const {
  for (const auto& r : rows) {
    if (r.metric == name) return &r;
  }
  return nullptr;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"metric", r.metric},
                         {"estimate", r.estimate},
                         {"ci", r.ci},
                         {"trials", r.trials},
                         {"horizon", r.horizon},
                         {"seed", r.seed}});
  }
  nlohmann::json th = nlohmann::json::array();
  for (const auto& t : thresholds) {
    th.push_back({{"metric", t.metric},
                  {"kind", t.kind},
                  {"bound", t.bound},
                  {"margin", t.margin},
                  {"estimate", t.estimate},
                  {"ci", t.ci},
                  {"pass", t.pass}});
  }
  nlohmann::json files = nlohmann::json::array();
  for (const auto& [name, content] : artifacts) files.push_back(name);
  return {{"schema_version", kReportSchemaVersion},
          {"scenario", scenario},
          {"metric", metric},
          {"seed", seed},
          {"config", config.to_json()},
          {"results", results},
          {"rows", rows_json},
          {"thresholds", th},
          {"warnings", warnings},
          {"records", files},
          {"pass", pass()}};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_header() { return "metric,estimate,ci,trials,horizon,seed"; }

std::string csv_line(const MetricRow& r) {
  return r.metric + "," + format_number(r.estimate) + "," + format_number(r.ci) + "," + std::to_string(r.trials) +
         "," + std::to_string(r.horizon) + "," + std::to_string(r.seed);
}

std::string RunReport::to_csv() const {
  std::string out = csv_header() + "\n";
  for (const auto& r : rows) out += csv_line(r) + "\n";
  return out;
}

void evaluate_thresholds(RunReport& report, const Config& c) {
  if (!c.has_section("thresholds")) return;
  const double margin = c.get_double("thresholds", "margin", 3.0);
  for (const auto& [key, value] : c.sections().at("thresholds")) {
    if (key == "margin") continue;
    ThresholdResult t;
    if (key.size() > 4 && key.ends_with("_min")) {
      t.kind = "min";
    } else if (key.size() > 4 && key.ends_with("_max")) {
      t.kind = "max";
    } else {
      throw ConfigError("config: [thresholds] key '" + key + "' must end in _min or _max");
    }
    t.metric = key.substr(0, key.size() - 4);
    t.bound = c.get_double("thresholds", key, 0.0);
    t.margin = margin;
    if (const MetricRow* r = report.row(t.metric)) {
      t.estimate = r->estimate;
      t.ci = r->ci;
      t.pass = t.kind == "min" ? t.estimate + margin * t.ci >= t.bound : t.estimate - margin * t.ci <= t.bound;
    } else {
      report.warnings.push_back("threshold on unknown metric '" + t.metric + "'");
    }
    report.thresholds.push_back(t);
  }
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace

void write_report(const RunReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", report.to_json().dump(2) + "\n");
  write_file(dir / "summary.csv", report.to_csv());
  for (const auto& [name, content] : report.artifacts) write_file(dir / name, content);
}

}  // namespace repgame::harness
