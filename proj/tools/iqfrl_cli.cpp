#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iqfrl/classifier.hpp"
#include "iqfrl/config.hpp"
#include "iqfrl/dataset.hpp"
#include "iqfrl/fusion.hpp"
#include "iqfrl/kb_io.hpp"
#include "iqfrl/learner.hpp"
#include "iqfrl/rule_select.hpp"
#include "iqfrl/sim.hpp"
#include "iqfrl/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kRunFailure = 3 };

/// Raised for problems with input files or their contents.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a run starts but cannot finish (e.g. an incomplete lap).
class RunFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string utcNow() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Manifest {
  std::string command;
  std::string config;
  std::uint64_t seed = 0;
  json inputs = json::object();
  json outputs = json::object();
  std::string started = utcNow();

  void write(const fs::path &path) const {
    json j;
    j["command"] = command;
    j["config"] = config;
    j["seed"] = seed;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["started"] = started;
    j["finished"] = utcNow();
    iqfrl::writeFile(path.string(), j.dump(2) + "\n");
  }
};

fs::path manifestPathFor(const fs::path &out) {
  if (fs::is_directory(out)) return out / "manifest.json";
  return fs::path(out.string() + ".manifest.json");
}

iqfrl::LearnerConfig learnerConfig(const std::string &path, std::optional<std::uint64_t> seed) {
  iqfrl::LearnerConfig cfg = path.empty() ? iqfrl::LearnerConfig{} : iqfrl::loadConfig(path);
  if (seed) cfg.seed = *seed;
  iqfrl::checkConfig(cfg);
  return cfg;
}

std::optional<iqfrl::KnowledgeBase> optionalKb(const std::string &path) {
  if (path.empty()) return std::nullopt;
  return iqfrl::loadKb(path);
}

struct KbPaths {
  std::string sw, cx, cc, cls;

  iqfrl::ControllerSet load() const {
    iqfrl::ControllerSet set;
    set.straight = optionalKb(sw);
    set.convex = optionalKb(cx);
    set.concave = optionalKb(cc);
    set.classifier = optionalKb(cls);
    if (!set.straight) throw DataError("--kb-sw is required");
    return set;
  }

  void record(json &inputs) const {
    inputs["kb_sw"] = sw;
    if (!cx.empty()) inputs["kb_cx"] = cx;
    if (!cc.empty()) inputs["kb_cc"] = cc;
    if (!cls.empty()) inputs["kb_class"] = cls;
  }
};

void addKbOptions(CLI::App *cmd, KbPaths &kb) {
  cmd->add_option("--kb-sw", kb.sw, "Straight-wall KB (.qfr)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--kb-cx", kb.cx, "Convex-corner KB (.qfr)")->check(CLI::ExistingFile);
  cmd->add_option("--kb-cc", kb.cc, "Concave-corner KB (.qfr)")->check(CLI::ExistingFile);
  cmd->add_option("--kb-class", kb.cls, "Situation classifier KB (.qfr)")->check(CLI::ExistingFile);
}

std::array<std::size_t, 3> parseCounts(const std::string &text) {
  std::array<std::size_t, 3> counts{};
  auto toks = iqfrl::tokenize(text, true);
  if (toks.size() != 3) throw CLI::ValidationError("--counts", "expected three comma-separated counts");
  for (std::size_t i = 0; i < 3; ++i) {
    auto v = iqfrl::parseInteger(toks[i], 1);
    if (v < 0) throw CLI::ValidationError("--counts", "counts must be non-negative");
    counts[i] = static_cast<std::size_t>(v);
  }
  return counts;
}

void writeTrainLog(const fs::path &path, const iqfrl::TrainResult &r) {
  std::ostringstream os;
  os << "# epoch iterations best_fitness removed uncovered forced\n";
  for (const auto &e : r.epochs) {
    os << e.epoch << ' ' << e.iterations << ' ' << iqfrl::formatDouble(e.bestFitness) << ' ' << e.removed << ' '
       << e.uncoveredAfter << ' ' << (e.forced ? 1 : 0) << '\n';
  }
  iqfrl::writeFile(path.string(), os.str());
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quantified fuzzy rule learning workbench"};
  app.require_subcommand(1);

  std::string configPath;
  std::optional<std::uint64_t> seed;
  std::string envPath;
  std::string outPath;
  std::string dataPath;
  std::string kbPath;
  std::string countsText = "572,540,594";
  std::string scenarioPath;
  int laps = 1;
  KbPaths kbs;
  std::vector<std::string> metricFiles;

  auto *gen = app.add_subcommand("gen-data", "Record supervisor datasets in an environment");
  gen->add_option("--env", envPath, "Environment file")->required()->check(CLI::ExistingFile);
  gen->add_option("--counts", countsText, "Examples per situation: straight,convex,concave");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", outPath, "Output directory")->required();

  auto *train = app.add_subcommand("train", "Learn a regression KB");
  auto *trainC = app.add_subcommand("train-classifier", "Learn a situation classifier KB");
  for (auto *cmd : {train, trainC}) {
    cmd->add_option("--data", dataPath, "Dataset file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--config", configPath, "Learner configuration")->check(CLI::ExistingFile);
    cmd->add_option("--seed", seed, "Random seed (overrides the configuration)");
    cmd->add_option("--out", outPath, "Output KB (.qfr)")->required();
  }

  auto *select = app.add_subcommand("select-rules", "Choose a cooperative rule subset");
  select->add_option("--kb", kbPath, "Input KB")->required()->check(CLI::ExistingFile);
  select->add_option("--data", dataPath, "Dataset file")->required()->check(CLI::ExistingFile);
  select->add_option("--seed", seed, "Random seed");
  select->add_option("--out", outPath, "Output KB (.qfr)")->required();

  auto *simulate = app.add_subcommand("simulate", "Run wall following and write the trace and metrics");
  auto *evaluate = app.add_subcommand("evaluate", "Run wall following and print the metrics report");
  for (auto *cmd : {simulate, evaluate}) {
    cmd->add_option("--env", envPath, "Environment file")->required()->check(CLI::ExistingFile);
    addKbOptions(cmd, kbs);
    cmd->add_option("--laps", laps, "Number of laps")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Recorded in the manifest; runs are deterministic");
  }
  simulate->add_option("--out", outPath, "Output directory")->required();
  evaluate->add_option("--out", outPath, "Optional metrics report file");

  auto *report = app.add_subcommand("quality-report", "Aggregate metrics reports across environments");
  report->add_option("files", metricFiles, "Metrics reports")->required()->check(CLI::ExistingFile);
  report->add_option("--out", outPath, "Output table file (stdout when absent)");

  auto *track = app.add_subcommand("track", "Tracking with wall-following obstacle avoidance");
  track->add_option("--env", envPath, "Environment file")->required()->check(CLI::ExistingFile);
  track->add_option("--scenario", scenarioPath, "Scenario file")->required()->check(CLI::ExistingFile);
  addKbOptions(track, kbs);
  track->add_option("--seed", seed, "Recorded in the manifest; runs are deterministic");
  track->add_option("--out", outPath, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  Manifest manifest;
  manifest.seed = seed.value_or(1);
  manifest.config = configPath;
  try {
    if (gen->parsed()) {
      manifest.command = "gen-data";
      iqfrl::GenDataOptions opt;
      opt.counts = parseCounts(countsText);
      opt.seed = manifest.seed;
      auto env = iqfrl::loadEnvironment(envPath);
      auto data = iqfrl::generateSupervisorData(env, opt);
      fs::create_directories(outPath);
      const char *names[] = {"straight.data", "convex.data", "concave.data"};
      for (std::size_t s = 0; s < 3; ++s) {
        auto p = fs::path(outPath) / names[s];
        iqfrl::saveDataset(p.string(), data.bySituation[s]);
        manifest.outputs[names[s]] = p.string();
      }
      auto cp = fs::path(outPath) / "classes.data";
      iqfrl::saveDataset(cp.string(), data.classes);
      manifest.outputs["classes.data"] = cp.string();
      manifest.inputs["env"] = envPath;
      manifest.inputs["counts"] = countsText;
      manifest.write(manifestPathFor(outPath));
      std::cout << "straight " << data.bySituation[0].size() << " convex " << data.bySituation[1].size()
                << " concave " << data.bySituation[2].size() << '\n';
    } else if (train->parsed() || trainC->parsed()) {
      bool classifier = trainC->parsed();
      manifest.command = classifier ? "train-classifier" : "train";
      auto cfg = learnerConfig(configPath, seed);
      manifest.seed = cfg.seed;
      auto data = iqfrl::loadDataset(dataPath);
      if (data.empty()) throw DataError("dataset " + dataPath + " has no examples");
      auto observer = [](const iqfrl::EpochReport &r) {
        std::cerr << "epoch " << r.epoch << " fitness " << r.bestFitness << " uncovered " << r.uncoveredAfter << '\n';
      };
      auto result = classifier ? iqfrl::trainClassifier(data, cfg, observer) : iqfrl::trainRegression(data, cfg, observer);
      iqfrl::saveKb(outPath, result.kb);
      writeTrainLog(outPath + ".log", result);
      manifest.inputs["data"] = dataPath;
      manifest.outputs["kb"] = outPath;
      manifest.outputs["log"] = outPath + ".log";
      manifest.write(manifestPathFor(outPath));
      std::cout << "rules " << result.kb.rules.size() << '\n';
    } else if (select->parsed()) {
      manifest.command = "select-rules";
      auto kb = iqfrl::loadKb(kbPath);
      auto data = iqfrl::loadDataset(dataPath);
      iqfrl::SelectOptions opt;
      opt.seed = manifest.seed;
      auto result = iqfrl::ilsSelect(kb, data, opt);
      iqfrl::saveKb(outPath, result.kb);
      manifest.inputs["kb"] = kbPath;
      manifest.inputs["data"] = dataPath;
      manifest.outputs["kb"] = outPath;
      manifest.write(manifestPathFor(outPath));
      std::cout << "rules " << kb.rules.size() << " -> " << result.kb.rules.size() << " score "
                << iqfrl::formatDouble(result.fullScore) << " -> " << iqfrl::formatDouble(result.score) << '\n';
    } else if (simulate->parsed() || evaluate->parsed()) {
      bool sim = simulate->parsed();
      manifest.command = sim ? "simulate" : "evaluate";
      auto env = iqfrl::loadEnvironment(envPath);
      auto set = kbs.load();
      auto run = iqfrl::runWallFollowing(env, set, laps, {}, sim);
      std::string reportText = iqfrl::formatMetricsReport(env.name, run);
      manifest.inputs["env"] = envPath;
      kbs.record(manifest.inputs);
      manifest.inputs["laps"] = laps;
      if (sim) {
        fs::create_directories(outPath);
        std::string traceText = iqfrl::traceHeader();
        for (const auto &r : run.trace) traceText += iqfrl::formatTrace(r);
        iqfrl::writeFile((fs::path(outPath) / "trace.txt").string(), traceText);
        iqfrl::writeFile((fs::path(outPath) / "metrics.txt").string(), reportText);
        manifest.outputs["trace"] = (fs::path(outPath) / "trace.txt").string();
        manifest.outputs["metrics"] = (fs::path(outPath) / "metrics.txt").string();
        manifest.write(manifestPathFor(outPath));
      } else if (!outPath.empty()) {
        iqfrl::writeFile(outPath, reportText);
        manifest.outputs["metrics"] = outPath;
        manifest.write(manifestPathFor(outPath));
      }
      std::cout << reportText;
      if (!run.complete) throw RunFailure("lap " + std::to_string(run.laps.size() + 1) + " did not complete");
    } else if (report->parsed()) {
      manifest.command = "quality-report";
      std::vector<iqfrl::MetricsReport> reports;
      for (const auto &f : metricFiles) reports.push_back(iqfrl::parseMetricsReport(iqfrl::readFile(f)));
      std::string table = iqfrl::formatQualityTable(reports);
      if (outPath.empty()) {
        std::cout << table;
      } else {
        iqfrl::writeFile(outPath, table);
        manifest.inputs["metrics"] = metricFiles;
        manifest.outputs["table"] = outPath;
        manifest.write(manifestPathFor(outPath));
      }
    } else if (track->parsed()) {
      manifest.command = "track";
      auto env = iqfrl::loadEnvironment(envPath);
      auto scenario = iqfrl::loadScenario(scenarioPath);
      auto set = kbs.load();
      auto result = iqfrl::runTracking(env, scenario, set, {});
      fs::create_directories(outPath);
      std::ostringstream os;
      os << "# t x y theta v omega target_x target_y behavior vlin vang\n";
      for (const auto &r : result.trace) {
        os << iqfrl::formatDouble(r.t) << ' ' << iqfrl::formatDouble(r.state.pose.x) << ' '
           << iqfrl::formatDouble(r.state.pose.y) << ' ' << iqfrl::formatDouble(r.state.pose.theta) << ' '
           << iqfrl::formatDouble(r.state.v) << ' ' << iqfrl::formatDouble(r.state.omega) << ' '
           << iqfrl::formatDouble(r.target.x) << ' ' << iqfrl::formatDouble(r.target.y) << ' '
           << (r.behavior == iqfrl::Behavior::Tracking ? "tracking" : "avoidance") << ' '
           << iqfrl::formatDouble(r.command.vlin) << ' ' << iqfrl::formatDouble(r.command.vang) << '\n';
      }
      iqfrl::writeFile((fs::path(outPath) / "track.txt").string(), os.str());
      std::ostringstream summary;
      summary << "mean_distance " << iqfrl::formatDouble(result.meanDistance) << "\navoidance_time "
              << iqfrl::formatDouble(result.avoidanceTime) << "\nswitches " << result.switches << "\ncollisions "
              << result.collisions << '\n';
      iqfrl::writeFile((fs::path(outPath) / "summary.txt").string(), summary.str());
      manifest.inputs["env"] = envPath;
      manifest.inputs["scenario"] = scenarioPath;
      kbs.record(manifest.inputs);
      manifest.outputs["trace"] = (fs::path(outPath) / "track.txt").string();
      manifest.outputs["summary"] = (fs::path(outPath) / "summary.txt").string();
      manifest.write(manifestPathFor(outPath));
      std::cout << summary.str();
    }
  } catch (const CLI::ValidationError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const RunFailure &e) {
    std::cerr << "run failure: " << e.what() << '\n';
    return kRunFailure;
  } catch (const iqfrl::ParseError &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const DataError &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}
