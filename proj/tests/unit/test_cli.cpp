#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "doctest.h"
#include "iqfrl/dataset.hpp"
#include "iqfrl/kb_io.hpp"
#include "iqfrl/sim.hpp"
#include "iqfrl/text.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace iqfrl;

namespace {

const std::string kData = IQFRL_DATA_DIR;

/// Runs the command-line tool with stdout and stderr captured to files and returns its exit status.
int cli(const std::string &args, const fs::path &dir) {
  std::string cmd = std::string(IQFRL_CLI) + " " + args + " >" + (dir / "stdout.txt").string() + " 2>" +
                    (dir / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / ("iqfrl_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli data generation") {
  auto dir = scratch("gen");
  std::string room = kData + "/envs/rect_room.env";
  REQUIRE(cli("gen-data --env " + room + " --counts 12,0,5 --seed 4 --out " + (dir / "a").string(), dir) == 0);
  auto straight = loadDataset((dir / "a/straight.data").string());
  CHECK(straight.size() == 12);
  auto convex = loadDataset((dir / "a/convex.data").string());
  CHECK(convex.empty());
  CHECK(readFile((dir / "a/convex.data").string()).find("beams 722") != std::string::npos);
  CHECK(loadDataset((dir / "a/concave.data").string()).size() == 5);
  CHECK(loadDataset((dir / "a/classes.data").string()).size() == 17);

  auto manifest = nlohmann::json::parse(readFile((dir / "a/manifest.json").string()));
  CHECK(manifest["command"] == "gen-data");
  CHECK(manifest["seed"] == 4);
  CHECK(manifest["outputs"].contains("classes.data"));

  REQUIRE(cli("gen-data --env " + room + " --counts 12,0,5 --seed 4 --out " + (dir / "b").string(), dir) == 0);
  for (const char *f : {"straight.data", "concave.data", "classes.data"}) {
    CHECK(readFile((dir / "a" / f).string()) == readFile((dir / "b" / f).string()));
  }
}

TEST_CASE("cli training and selection") {
  auto dir = scratch("train");
  auto data = testing::syntheticDataset(25, 16, 91);
  saveDataset((dir / "all.data").string(), data);
  Dataset one = data;
  one.examples.resize(1);
  saveDataset((dir / "one.data").string(), one);
  std::string cfg = kData + "/config/default.cfg";

  REQUIRE(cli("train --data " + (dir / "one.data").string() + " --config " + cfg + " --out " + (dir / "one.qfr").string(),
              dir) == 0);
  CHECK(loadKb((dir / "one.qfr").string()).rules.size() == 1);

  std::string train = "train --data " + (dir / "all.data").string() + " --config " + cfg + " --seed 7 --out ";
  REQUIRE(cli(train + (dir / "a.qfr").string(), dir) == 0);
  REQUIRE(cli(train + (dir / "b.qfr").string(), dir) == 0);
  CHECK(readFile((dir / "a.qfr").string()) == readFile((dir / "b.qfr").string()));
  CHECK(fs::exists(dir / "a.qfr.log"));
  CHECK(fs::exists(dir / "a.qfr.manifest.json"));

  REQUIRE(cli("select-rules --kb " + (dir / "a.qfr").string() + " --data " + (dir / "all.data").string() + " --out " +
                  (dir / "s.qfr").string(),
              dir) == 0);
  CHECK(loadKb((dir / "s.qfr").string()).rules.size() <= loadKb((dir / "a.qfr").string()).rules.size());
}

TEST_CASE("cli simulation and quality report") {
  auto dir = scratch("sim");
  saveKb((dir / "sw.qfr").string(), testing::handFollower());
  std::string room = kData + "/envs/rect_room.env";
  REQUIRE(cli("simulate --env " + room + " --kb-sw " + (dir / "sw.qfr").string() + " --laps 1 --out " +
                  (dir / "run").string(),
              dir) == 0);
  CHECK(fs::exists(dir / "run/trace.txt"));
  CHECK(fs::exists(dir / "run/manifest.json"));
  auto report = parseMetricsReport(readFile((dir / "run/metrics.txt").string()));
  CHECK(report.complete);
  CHECK(report.laps.size() == 1);

  std::string metrics = (dir / "run/metrics.txt").string();
  REQUIRE(cli("quality-report " + metrics, dir) == 0);
  CHECK(readFile((dir / "stdout.txt").string()).find("rect-room") != std::string::npos);

  REQUIRE(cli("quality-report " + metrics + " " + metrics + " --out " + (dir / "table.txt").string(), dir) == 0);
  std::istringstream table(readFile((dir / "table.txt").string()));
  std::string line;
  bool sawStd = false;
  while (std::getline(table, line)) {
    if (line.rfind("std ", 0) != 0) continue;
    sawStd = true;
    std::istringstream row(line.substr(4));
    double x = 0.0;
    while (row >> x) CHECK(x == 0.0);
  }
  CHECK(sawStd);
}

TEST_CASE("cli exit codes") {
  auto dir = scratch("codes");
  std::string room = kData + "/envs/rect_room.env";
  CHECK(cli("no-such-command", dir) == 1);
  CHECK(cli("gen-data --env " + room + " --counts 1,2 --out " + (dir / "x").string(), dir) == 1);
  CHECK(cli("gen-data --env " + room + " --counts 1,-2,3 --out " + (dir / "x").string(), dir) == 1);

  writeFile((dir / "bad.qfr").string(), "this is not a knowledge base\n");
  CHECK(cli("simulate --env " + room + " --kb-sw " + (dir / "bad.qfr").string() + " --out " + (dir / "y").string(),
            dir) == 2);
  writeFile((dir / "bad.env").string(), "segment 0 0\n");
  CHECK(cli("gen-data --env " + (dir / "bad.env").string() + " --counts 1,0,0 --out " + (dir / "z").string(), dir) == 2);

  // A controller that only spins in place never finishes a lap.
  KnowledgeBase spin;
  spin.domain = Domain::forBeams(722);
  QFRule r;
  r.sectors.push_back({LinguisticLabel(spin.domain.distance, 1, 1), LinguisticLabel(spin.domain.beam, 1, 1), 100.0});
  r.consequent = Consequent{1, 19};
  spin.rules.push_back(r);
  saveKb((dir / "spin.qfr").string(), spin);
  CHECK(cli("evaluate --env " + room + " --kb-sw " + (dir / "spin.qfr").string() + " --laps 1", dir) == 3);
}
