#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "streamlca/diary.hpp"

using namespace streamlca;
namespace fs = std::filesystem;

namespace {

std::string g_cli;  // path to the built binary, from argv[1]
fs::path g_work;    // scratch dir with fixture files

int run(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir))
    out[e.path().filename().string()] = slurp(e.path());
  return out;
}

std::string fixtures(const std::string& scenario = "") {
  std::string s = "--diary " + (g_work / "e.csv").string() + " --profiles " +
                  (g_work / "p.csv").string();
  if (!scenario.empty()) s += " --scenario " + (g_work / scenario).string();
  return s;
}

}  // namespace

TEST_CASE("validate exits 0 on clean input and 1 on broken input") {
  CHECK(run("validate " + fixtures()) == 0);
  spit(g_work / "bad.csv", "nope\n");
  CHECK(run("validate --diary " + (g_work / "bad.csv").string() +
            " --profiles " + (g_work / "p.csv").string()) == 1);
  CHECK(run("validate --diary " + (g_work / "missing.csv").string() +
            " --profiles " + (g_work / "p.csv").string()) == 1);
}

TEST_CASE("strict mode turns warnings into exit 2") {
  // 4 + 3 h in one 6 h slot triggers the oversubscription warning
  spit(g_work / "warn_e.csv",
       "participant_id,day,slot,platform,device,hours,audience,resolution,"
       "parallel_activities\n"
       "avg,1,evening,paid_platform,smart_tv,4,1,automatic,\n"
       "avg,1,evening,free_platform,smartphone,3,1,automatic,\n");
  const std::string args = "--diary " + (g_work / "warn_e.csv").string() +
                           " --profiles " + (g_work / "p.csv").string();
  CHECK(run("validate " + args) == 0);
  CHECK(run("--strict validate " + args) == 2);
}

TEST_CASE("footprint writes its report set and nothing on failure") {
  const fs::path out = g_work / "out_fp";
  CHECK(run("--out-dir " + out.string() + " footprint " + fixtures() +
            " --by platform") == 0);
  CHECK(fs::exists(out / "footprint_cells.tsv"));
  CHECK(fs::exists(out / "footprint_by_platform.tsv"));
  CHECK(fs::exists(out / "footprint_by_platform.svg"));
  const std::string cells = slurp(out / "footprint_cells.tsv");
  CHECK(cells.rfind("# tool", 0) == 0);  // manifest header first
  CHECK(cells.find("paid_platform") != std::string::npos);

  const fs::path out2 = g_work / "out_fail";
  CHECK(run("--out-dir " + out2.string() + " footprint --diary " +
            (g_work / "missing.csv").string() + " --profiles " +
            (g_work / "p.csv").string()) == 1);
  CHECK(!fs::exists(out2));
}

TEST_CASE("reports are byte-identical across repeated runs") {
  const fs::path out = g_work / "out_det";
  const std::string cmd = "--out-dir " + out.string() + " footprint " +
                          fixtures() + " --by device";
  CHECK(run(cmd) == 0);
  auto first = dir_contents(out);
  CHECK(run(cmd) == 0);
  CHECK(dir_contents(out) == first);
  CHECK(first.size() == 3);
}

TEST_CASE("intensity and table format") {
  const fs::path out = g_work / "out_int";
  CHECK(run("--out-dir " + out.string() + " --format table intensity") == 0);
  const std::string t = slurp(out / "intensity.txt");
  CHECK(t.find("smart_tv") != std::string::npos);
  CHECK(t.find('\t') == std::string::npos);  // table format, not delimited
  CHECK(slurp(out / "intensity.svg").find("<svg") != std::string::npos);
}

TEST_CASE("scenario comparison runs from a JSON file") {
  spit(g_work / "sc.json",
       R"({"name": "all_360p", "forced_resolution": {"paid_platform": "360p",
           "free_platform": "360p", "social_media": "360p",
           "tv_station_stream": "360p"}})");
  const fs::path out = g_work / "out_sc";
  CHECK(run("--out-dir " + out.string() + " scenario " + fixtures("sc.json")) ==
        0);
  CHECK(fs::exists(out / "scenario_all_360p.tsv"));
  const std::string t = slurp(out / "scenario_all_360p.tsv");
  CHECK(t.find("traffic") != std::string::npos);

  spit(g_work / "sc_bad.json", R"({"param_overrides": {"no.such.param": 1}})");
  CHECK(run("--out-dir " + (g_work / "out_scb").string() + " scenario " +
            fixtures("sc_bad.json")) == 1);
}

TEST_CASE("analyze refuses a single-participant diary") {
  CHECK(run("--out-dir " + (g_work / "out_an").string() + " analyze " +
            fixtures()) == 1);
  CHECK(!fs::exists(g_work / "out_an"));
}

TEST_CASE("mc is reproducible for a fixed seed and reports it") {
  const fs::path out = g_work / "out_mc";
  const std::string cmd = "--out-dir " + out.string() + " mc " + fixtures() +
                          " --seed 99 --samples 200";
  CHECK(run(cmd) == 0);
  const std::string first = slurp(out / "mc_summary.tsv");
  CHECK(first.find("# seed: 99") != std::string::npos);
  CHECK(run(cmd) == 0);
  CHECK(slurp(out / "mc_summary.tsv") == first);
}

TEST_CASE("tornado report lists every numeric parameter") {
  const fs::path out = g_work / "out_tor";
  CHECK(run("--out-dir " + out.string() + " tornado " + fixtures()) == 0);
  const std::string t = slurp(out / "tornado.tsv");
  CHECK(t.find("devices.smart_tv.embodied_kg") != std::string::npos);
  CHECK(t.find("grid_network.kg_per_kwh") != std::string::npos);
  CHECK(t.find("baseline") != std::string::npos);
}

TEST_CASE("shipped scenario files run end to end") {
  const fs::path scen = fs::path(STREAMLCA_SOURCE_DIR) / "scenarios";
  const std::string shipped_fixtures =
      "--diary " STREAMLCA_SOURCE_DIR "/data/fixtures/average_week_entries.csv"
      " --profiles " STREAMLCA_SOURCE_DIR
      "/data/fixtures/average_week_profiles.csv";
  int n = 0;
  for (const auto& e : fs::directory_iterator(scen)) {
    const fs::path out = g_work / ("out_ship_" + std::to_string(n++));
    CHECK(run("--out-dir " + out.string() + " scenario " + shipped_fixtures +
              " --scenario " + e.path().string()) == 0);
  }
  CHECK(n == 3);
}

TEST_CASE("unknown flags and missing subcommand fail without output") {
  CHECK(run("") != 0);
  CHECK(run("footprint --no-such-flag") != 0);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli>\n");
    return 1;
  }
  g_cli = argv[1];
  g_work = fs::temp_directory_path() / "streamlca_cli_test";
  fs::remove_all(g_work);
  fs::create_directories(g_work);
  save_dataset(synth_average_participant(), (g_work / "e.csv").string(),
               (g_work / "p.csv").string());

  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);  // keep doctest away from our CLI path arg
  const int rc = ctx.run();
  fs::remove_all(g_work);
  return rc;
}
