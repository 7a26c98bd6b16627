#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "repgame/harness/config.hpp"
#include "repgame/harness/report.hpp"
#include "repgame/harness/scenario.hpp"

namespace fs = std::filesystem;
using namespace repgame::harness;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("repgame-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + REPGAME_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path config_dir() { return fs::path(REPGAME_SOURCE_DIR) / "configs"; }

constexpr const char* kSmall = R"(
[scenario]
metric = adaptive_regret
seed = 4

[game]
kind = coordination
n = 3

[learner]
kind = explore_then_commit
exploration = 30

[partner]
kind = uniform

[estimation]
trials = 40
horizon = 200
)";

}  // namespace

TEST(Config, ParsesSectionsCommentsAndLists) {
  const Config c = Config::parse("# top\n[game]\n; note\nkind = coordination\nn = 4\n[partner.a]\nweights = 0.5, 0.5\n");
  EXPECT_EQ(c.get("game", "kind"), "coordination");
  EXPECT_EQ(c.get_int("game", "n", 0), 4);
  EXPECT_EQ(c.get_list("partner.a", "weights"), (std::vector<std::string>{"0.5", "0.5"}));
  EXPECT_EQ(c.get("game", "missing", "x"), "x");
  EXPECT_TRUE(c.has_section("partner.a"));
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(Config::parse("[game\nkind = x\n"), ConfigError);
  EXPECT_THROW(Config::parse("[game]\na.b = 1\n"), ConfigError);
  EXPECT_NO_THROW(Config::parse("[sweep]\ngame.n = 3 4\n"));
  const Config c = Config::parse("[game]\nn = three\n");
  EXPECT_THROW(c.get_int("game", "n", 0), ConfigError);
  EXPECT_THROW(c.get("game", "kind"), ConfigError);
}

TEST(Config, EraseDropsEmptySections) {
  Config c = Config::parse("[a]\nx = 1\n");
  c.erase("a", "x");
  EXPECT_FALSE(c.has_section("a"));
  EXPECT_EQ(Config::split_path("partner.grim1.which"), (std::pair<std::string, std::string>{"partner.grim1", "which"}));
}

TEST(Report, CsvColumnsAndNumberFormat) {
  EXPECT_EQ(csv_header(), "metric,estimate,ci,trials,horizon,seed");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(csv_line({"regret", 0.5, 0.25, 10, 20, 3}), "regret,0.5,0.25,10,20,3");
}

TEST(Report, Thresholds) {
  RunReport r;
  r.rows.push_back({"regret", 0.40, 0.02, 1, 1, 0});
  evaluate_thresholds(r, Config::parse("[thresholds]\nregret_min = 0.45\n"));
  EXPECT_TRUE(r.pass());
  r.thresholds.clear();
  evaluate_thresholds(r, Config::parse("[thresholds]\nregret_min = 0.45\nmargin = 1\n"));
  EXPECT_FALSE(r.pass());
  r.thresholds.clear();
  evaluate_thresholds(r, Config::parse("[thresholds]\nregret_max = 0.3\n"));
  EXPECT_FALSE(r.pass());
  r.thresholds.clear();
  evaluate_thresholds(r, Config::parse("[thresholds]\nnothing_min = 0\n"));
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_THROW(evaluate_thresholds(r, Config::parse("[thresholds]\nregret = 1\n")), ConfigError);
}

TEST(Scenario, RunsAndReproduces) {
  const Config c = Config::parse(kSmall);
  const RunReport a = run_scenario(c);
  RunOptions opt;
  opt.parallelism = 3;
  const RunReport b = run_scenario(c, opt);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  EXPECT_EQ(a.to_csv(), b.to_csv());
  ASSERT_NE(a.row("regret"), nullptr);
  EXPECT_EQ(a.to_json().at("schema_version"), kReportSchemaVersion);
  opt.seed = 5;
  EXPECT_NE(run_scenario(c, opt).to_json().dump(), a.to_json().dump());
}

TEST(Scenario, EmptySweepIsSingleRun) {
  const SweepResult s = sweep(Config::parse(kSmall));
  ASSERT_EQ(s.points.size(), 1u);
  EXPECT_TRUE(s.axes.empty());
  EXPECT_TRUE(s.points[0].report.has_value());
}

TEST(Scenario, SweepGridAndCsv) {
  Config c = Config::parse(kSmall);
  c.set("sweep", "game.n", "3 4");
  c.set("sweep", "estimation.horizon", "100 150");
  const SweepResult s = sweep(c);
  ASSERT_EQ(s.points.size(), 4u);
  const std::string csv = s.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "estimation.horizon,game.n,metric,estimate,ci,trials,horizon,seed,pass,error");
}

TEST(Scenario, UnknownKindIsConfigError) {
  Config c = Config::parse(kSmall);
  c.set("partner", "kind", "telepathic");
  EXPECT_THROW(prepare(c, {}), ConfigError);
}

TEST(Cli, MalformedKindExitsTwoWithoutOutput) {
  const fs::path dir = scratch("malformed");
  std::string text = kSmall;
  text.replace(text.find("kind = uniform"), 14, "kind = unifrom");
  const fs::path cfg = write_file(dir / "bad.ini", text);
  EXPECT_EQ(cli("regret --config \"" + cfg.string() + "\" --out \"" + (dir / "out").string() + "\"", dir / "log"), 2);
  EXPECT_FALSE(fs::exists(dir / "out"));
  EXPECT_NE(slurp(dir / "log").find("unifrom"), std::string::npos);
}

TEST(Cli, BoundsScenario) {
  const fs::path dir = scratch("bounds");
  ASSERT_EQ(cli("bounds --config \"" + (config_dir() / "bounds.ini").string() + "\" --out \"" + dir.string() + "\"", dir / "log"), 0);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_TRUE(report.at("pass").get<bool>());
  EXPECT_NE(slurp(dir / "summary.csv").find("theorem1_bound,0.125,"), std::string::npos);
  EXPECT_EQ(cli("bounds --n 3 --delta 0.2 --format csv", dir / "flags"), 0);
  EXPECT_NE(slurp(dir / "flags").find("2/225"), std::string::npos);
  EXPECT_EQ(cli("bounds --n 2 --delta 0.1", dir / "bad"), 2);
}

TEST(Cli, ThresholdFailureExitsOne) {
  const fs::path dir = scratch("threshold");
  const fs::path ok = write_file(dir / "ok.ini", std::string(kSmall) + "\n[thresholds]\nregret_max = 0.5\n");
  const fs::path bad = write_file(dir / "bad.ini", std::string(kSmall) + "\n[thresholds]\nregret_min = 0.9\n");
  EXPECT_EQ(cli("regret --config \"" + ok.string() + "\" --out \"" + (dir / "a").string() + "\"", dir / "log"), 0);
  EXPECT_EQ(cli("regret --config \"" + bad.string() + "\" --out \"" + (dir / "b").string() + "\"", dir / "log"), 1);
  EXPECT_TRUE(fs::exists(dir / "b" / "report.json"));
}

TEST(Cli, SeededRunsAreByteIdentical) {
  const fs::path dir = scratch("repro");
  const fs::path cfg = write_file(dir / "run.ini", kSmall);
  ASSERT_EQ(cli("regret --config \"" + cfg.string() + "\" --seed 12 --out \"" + (dir / "a").string() + "\"", dir / "log"), 0);
  ASSERT_EQ(cli("regret --config \"" + cfg.string() + "\" --seed 12 --parallelism 4 --out \"" + (dir / "b").string() + "\"", dir / "log"), 0);
  EXPECT_EQ(slurp(dir / "a" / "report.json"), slurp(dir / "b" / "report.json"));
  EXPECT_EQ(slurp(dir / "a" / "summary.csv"), slurp(dir / "b" / "summary.csv"));
}

TEST(Cli, SimulateWritesTrajectories) {
  const fs::path dir = scratch("simulate");
  ASSERT_EQ(cli("simulate --config \"" + (config_dir() / "simulate.ini").string() + "\" --out \"" + dir.string() + "\"", dir / "log"), 0);
  std::ifstream in(dir / "trajectories.jsonl");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_GT(lines, 0u);
}

TEST(Cli, RationalityConfig) {
  const fs::path dir = scratch("fsm");
  EXPECT_EQ(cli("fsm --config \"" + (config_dir() / "rationality.ini").string() + "\" --out \"" + dir.string() + "\"", dir / "log"), 0);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_NE(slurp(dir / "summary.csv").find("rational_pass,0,"), std::string::npos);
  EXPECT_TRUE(report.contains("results"));
}

TEST(Cli, UnknownSuiteAndMetricExitTwo) {
  const fs::path dir = scratch("unknown");
  EXPECT_EQ(cli("verify no-such-suite", dir / "log"), 2);
  const fs::path cfg = write_file(dir / "run.ini", kSmall);
  EXPECT_EQ(cli("regret --config \"" + cfg.string() + "\" --metric bounds", dir / "log"), 2);
}

TEST(Cli, VerifySmallSuite) {
  const fs::path dir = scratch("verify");
  EXPECT_EQ(cli("verify prop1-witness", dir / "log"), 0);
  EXPECT_NE(slurp(dir / "log").find("PASS"), std::string::npos);
}
