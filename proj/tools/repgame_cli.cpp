#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repgame/bounds.hpp"
#include "repgame/harness/config.hpp"
#include "repgame/harness/report.hpp"
#include "repgame/harness/scenario.hpp"
#include "repgame/harness/suites.hpp"

namespace {

using namespace repgame;
using namespace repgame::harness;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<unsigned> parallelism;
  std::string format = "json";
  std::string metric;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config) {
  auto* opt = cmd->add_option("--config", c.config, "Scenario file")->check(CLI::ExistingFile);
  if (needs_config) opt->required();
  cmd->add_option("--seed", c.seed, "Master seed override");
  cmd->add_option("--out", c.out, "Output directory (default: $REPGAME_OUT, [output] dir, or ./repgame-out)");
  cmd->add_option("--parallelism", c.parallelism, "Worker threads; 0 uses every core");
  cmd->add_option("--format", c.format, "Format printed to stdout")->check(CLI::IsMember({"json", "csv"}));
}

std::filesystem::path output_dir(const Common& c, const Config* config) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("REPGAME_OUT"); env && *env) return env;
  if (config && config->has("output", "dir")) return config->get("output", "dir");
  return "repgame-out";
}

/// Metric allowed for each scenario subcommand; the first is the default.
const std::map<std::string, std::vector<std::string>>& command_metrics() {
  static const std::map<std::string, std::vector<std::string>> m{
      {"simulate", {"simulate", "value"}},
      {"regret", {"adaptive_regret", "external_regret", "open_ended_regret", "commit_time"}},
      {"check", {"check_open_ended", "check_flexibility"}},
      {"exploit", {"exploit"}},
      {"fsm", {"fsm_value", "fsm_rationality"}}};
  return m;
}

std::string pick_metric(const std::string& command, const Common& c, const Config& config) {
  const auto& allowed = command_metrics().at(command);
  std::string metric = !c.metric.empty() ? c.metric : config.get("scenario", "metric", allowed.front());
  if (std::find(allowed.begin(), allowed.end(), metric) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw ConfigError("'" + command + "' runs one of: " + list + " (config asks for '" + metric + "')");
  }
  return metric;
}

void print_report(const RunReport& report, const std::string& format) {
  if (format == "csv") {
    std::cout << report.to_csv();
  } else {
    std::cout << report.to_json().dump(2) << '\n';
  }
}

int run_command(const std::string& command, const Common& c) {
  const Config config = Config::load(c.config);
  const RunOptions options{c.seed, c.parallelism, pick_metric(command, c, config)};
  prepare(config, options);
  const RunReport report = run_scenario(config, options);
  write_report(report, output_dir(c, &config));
  print_report(report, c.format);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  return report.pass() ? kPass : kFail;
}

int run_sweep(const Common& c) {
  const Config config = Config::load(c.config);
  const RunOptions options{c.seed, c.parallelism, c.metric.empty() ? std::nullopt : std::optional(c.metric)};
  Config base = config;
  if (base.has_section("sweep")) {
    for (const auto& [axis, values] : config.sections().at("sweep")) {
      Config::split_path(axis);
      base.erase("sweep", axis);
    }
  }
  prepare(base, options);
  const SweepResult result = sweep(config, options);
  write_sweep(result, output_dir(c, &config));
  if (c.format == "csv") {
    std::cout << result.to_csv();
  } else {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : result.points) {
      nlohmann::json coords = nlohmann::json::object();
      for (const auto& [axis, value] : p.coordinates) coords[axis] = value;
      points.push_back({{"coordinates", coords},
                        {"pass", p.report ? p.report->pass() : false},
                        {"error", p.error},
                        {"report", p.report ? p.report->to_json() : nlohmann::json(nullptr)}});
    }
    std::cout << nlohmann::json{{"axes", result.axes}, {"points", points}}.dump(2) << '\n';
  }
  for (const auto& p : result.points) {
    if (!p.error.empty()) std::cerr << "sweep point failed: " << p.error << '\n';
  }
  return result.pass() ? kPass : kFail;
}

struct BoundsArgs {
  std::optional<int> n;
  std::string delta;
  std::string gamma;
};

int run_bounds(const Common& c, const BoundsArgs& b) {
  if (!c.config.empty()) {
    Config config = Config::load(c.config);
    if (b.n) config.set("metric", "n", std::to_string(*b.n));
    if (!b.delta.empty()) config.set("metric", "delta", b.delta);
    if (!b.gamma.empty()) config.set("metric", "gamma", b.gamma);
    const RunOptions options{c.seed, c.parallelism, std::string("bounds")};
    prepare(config, options);
    const RunReport report = run_scenario(config, options);
    write_report(report, output_dir(c, &config));
    print_report(report, c.format);
    return report.pass() ? kPass : kFail;
  }
  if (!b.n) throw ConfigError("bounds needs --n (or --config)");
  Rational delta(1, 10);
  std::optional<Rational> gamma;
  try {
    if (!b.delta.empty()) delta = parse_rational(b.delta);
    if (!b.gamma.empty()) gamma = parse_rational(b.gamma);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  BoundTable t;
  try {
    t = bound_table(*b.n, delta, gamma);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!c.out.empty() || std::getenv("REPGAME_OUT")) {
    const auto dir = output_dir(c, nullptr);
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "bounds.json") << to_json(t).dump(2) << '\n';
    std::ofstream(dir / "bounds.csv") << to_csv(t);
  }
  if (c.format == "csv") {
    std::cout << to_csv(t);
  } else {
    std::cout << to_text(t) << '\n' << to_csv(t);
  }
  return kPass;
}

int run_verify(const Common& c, const std::string& suite) {
  if (!is_suite(suite)) {
    std::cerr << "unknown suite '" << suite << "'; expected all";
    for (const auto& n : suite_names()) std::cerr << ", " << n;
    std::cerr << '\n';
    return kUsage;
  }
  SuiteOptions options;
  if (c.parallelism) options.parallelism = *c.parallelism;
  bool all = true;
  nlohmann::json results = nlohmann::json::array();
  const std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, options);
    all = all && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.criterion << "  " << r.name << '\n';
    for (const auto& d : r.details) std::cout << "      " << d << '\n';
    std::cout.flush();
    results.push_back(to_json(r));
  }
  if (!c.out.empty() || std::getenv("REPGAME_OUT")) {
    const auto dir = output_dir(c, nullptr);
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "verify.json") << nlohmann::json{{"suite", suite}, {"pass", all}, {"results", results}}.dump(2)
                                       << '\n';
  }
  return all ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeated-game learning experiments"};
  app.require_subcommand(1);
  std::map<std::string, Common> common;
  for (const auto& [name, metrics] : command_metrics()) {
    auto* cmd = app.add_subcommand(name);
    add_common(cmd, common[name], true);
    std::string list;
    for (const auto& m : metrics) list += (list.empty() ? "" : ", ") + m;
    cmd->add_option("--metric", common[name].metric, "One of: " + list);
  }
  app.get_subcommand("simulate")->description("Roll out learner vs partner and estimate the value");
  app.get_subcommand("regret")->description("Adaptive, external or open-ended regret, or commit time");
  app.get_subcommand("check")->description("Flexibility or open-endedness of the partner");
  app.get_subcommand("exploit")->description("Construct and audit an adversarial partner");
  app.get_subcommand("fsm")->description("Exact machine-game value or computational rationality");

  auto* bounds = app.add_subcommand("bounds", "Exact lower-bound table for an N x N coordination game");
  add_common(bounds, common["bounds"], false);
  BoundsArgs bounds_args;
  bounds->add_option("--n", bounds_args.n, "Number of actions");
  bounds->add_option("--delta", bounds_args.delta, "Failure probability (decimal or p/q)");
  bounds->add_option("--gamma", bounds_args.gamma, "Non-convergence probability (default: gamma_star)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run the config over the grid in its [sweep] section");
  add_common(sweep_cmd, common["sweep"], true);
  sweep_cmd->add_option("--metric", common["sweep"].metric, "Metric override");

  auto* verify = app.add_subcommand("verify", "Run an acceptance suite with pinned seeds");
  add_common(verify, common["verify"], false);
  std::string suite = "all";
  verify->add_option("suite", suite, "Suite name or 'all'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    for (const auto& [name, metrics] : command_metrics()) {
      if (app.got_subcommand(name)) return run_command(name, common[name]);
    }
    if (app.got_subcommand("bounds")) return run_bounds(common["bounds"], bounds_args);
    if (app.got_subcommand("sweep")) return run_sweep(common["sweep"]);
    return run_verify(common["verify"], suite);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
}
