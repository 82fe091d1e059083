#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "cli.hpp"

using addcomb::cli::run;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("addcomb_cli_" + std::to_string(::getpid()))) { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

json report(const addcomb::cli::RunResult& r) { return json::parse(r.output); }

}  // namespace

TEST_CASE("find-ordering exit codes") {
  TempDir tmp;
  const auto sets = tmp.write("z3.json", "[[0,1,2],[0,1,2],[0,1,2]]");
  auto r = run({"--group", "Z/3", "find-ordering", "--sets", sets});
  CHECK(r.exit_code == 0);
  auto j = report(r);
  CHECK(j["command"] == "find-ordering");
  CHECK(j["seed"] == 1);
  CHECK(j["budget"] == "unlimited");
  CHECK(j["result"]["status"] == "found");
  CHECK(j["result"]["table"].size() == 3);
  CHECK(j["verification"]["verify_ordering"] == true);
  CHECK_FALSE(j.contains("timing_ms"));

  r = run({"--group", "klein", "find-ordering"});
  CHECK(r.exit_code == 2);
  CHECK(report(r)["result"]["status"] == "no_solution");

  const auto klein = tmp.write("klein.json", R"([["00","01"],["00","10"],["00","11"]])");
  CHECK(run({"--group", "Z/2 x Z/2", "find-ordering", "--sets", klein}).exit_code == 2);

  const auto z2 = tmp.write("z2.json", "[[0,1],[0,1]]");
  CHECK(run({"--group", "Z/2", "find-ordering", "--sets", z2}).exit_code == 2);

  const auto z7 = tmp.write("z7.json", "[[0,1,2,3],[0,1,2,3],[0,1,2,3],[0,1,2,3],[0,1,2,3]]");
  CHECK(run({"--group", "Z/7", "--budget", "1", "find-ordering", "--sets", z7}).exit_code == 3);
}

TEST_CASE("input errors exit 1 with an error report") {
  TempDir tmp;
  auto r = run({"frobnicate"});
  CHECK(r.exit_code == 1);
  CHECK(report(r)["error"]["kind"] == "usage");
  CHECK(run({"--group", "Z/3", "find-ordering", "--bogus"}).exit_code == 1);
  CHECK(run({}).exit_code == 1);

  const auto bad = tmp.write("bad.json", "[[0,1],");
  r = run({"--group", "Z/3", "find-ordering", "--sets", bad});
  CHECK(r.exit_code == 1);
  CHECK(report(r)["error"]["kind"] == "invalid_input");
  CHECK(run({"--group", "Z/3", "find-ordering", "--sets", (tmp.path / "missing.json").string()}).exit_code == 1);
  CHECK(run({"sweep", "no-such-suite"}).exit_code == 1);

  const auto uneven = tmp.write("uneven.json", "[[0,1],[0]]");
  CHECK(run({"--group", "Z/3", "find-ordering", "--sets", uneven}).exit_code == 1);
}

TEST_CASE("help exits 0") {
  auto r = run({"--help"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("find-ordering") != std::string::npos);
}

TEST_CASE("reports are reproducible") {
  const std::vector<std::string> base = {"--seed", "7", "--trials", "10", "sweep", "identities"};
  auto one = base, four = base;
  one.insert(one.begin(), {"--threads", "1"});
  four.insert(four.begin(), {"--threads", "4"});
  const auto a = run(one), b = run(four), c = run(one);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output == c.output);

  const auto d = run({"--seed", "8", "--trials", "10", "sweep", "identities"});
  CHECK(report(d)["inputs_digest"] != report(a)["inputs_digest"]);

  auto timed = run({"--timing", "--seed", "7", "--trials", "10", "sweep", "identities"});
  auto tj = report(timed);
  CHECK(tj.contains("timing_ms"));
  CHECK(tj["inputs_digest"] == report(a)["inputs_digest"]);
}

TEST_CASE("--out writes the report") {
  TempDir tmp;
  const auto out = (tmp.path / "report.json").string();
  const auto r = run({"--out", out, "--group", "klein", "find-ordering"});
  std::ifstream in(out);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == r.output);
  CHECK(json::parse(text)["exit_code"] == 2);
}

TEST_CASE("sweep examples") {
  auto r = run({"sweep", "corollary-1.1", "--N", "4"});
  CHECK(r.exit_code == 0);
  auto j = report(r);
  CHECK(j["result"]["cases"] == j["result"]["passed"]);
  CHECK(j["result"]["facts"]["max_cube_size"] == "4");

  r = run({"--trials", "100", "--seed", "7", "sweep", "identities"});
  CHECK(r.exit_code == 0);
  CHECK(report(r)["verification"]["all_passed"] == true);

  r = run({"sweep", "lemma-4.1"});
  CHECK(r.exit_code == 0);
  CHECK(report(r)["result"]["failures"].empty());
}

TEST_CASE("latin subcommand") {
  TempDir tmp;
  const auto idx = tmp.write("idx.json", "[0,1]");
  auto r = run({"latin", "--N", "2", "--subcube", idx, idx, idx});
  CHECK(r.exit_code == 0);
  auto j = report(r);
  CHECK(j["result"]["transversal"]["status"] == "found");
  CHECK(j["verification"]["verify_transversal"] == true);

  // A cube in which every cell holds 0 has no Latin transversal for n = 2.
  const auto zeros = tmp.write("zeros.json", "[[[0,0],[0,0]],[[0,0],[0,0]]]");
  r = run({"latin", "--cube", zeros});
  CHECK(r.exit_code == 2);

  r = run({"--trials", "3", "latin", "--random-cube", "4"});
  CHECK(r.exit_code == 0);
  CHECK(report(r)["result"]["found"] == 3);

  CHECK(run({"latin", "--N", "2"}).exit_code == 1);
}

TEST_CASE("check-identity subcommand") {
  TempDir tmp;
  for (const char* which : {"2.1", "3.1", "3.2", "3.3"}) {
    auto r = run({"--trials", "5", "check-identity", "--which", which, "--n", "2"});
    CHECK_MESSAGE(r.exit_code == 0, which);
    CHECK(report(r)["verification"]["equal_trials"] == 5);
  }
  const auto rows = tmp.write("rows.json", R"({"rows": [[1,2],[3,-1],[0,5]]})");
  auto r = run({"check-identity", "--which", "2.1", "--n", "2", "--m", "3", "--input", rows});
  CHECK(r.exit_code == 0);
  CHECK(report(r)["result"]["trials"] == 1);
  CHECK(run({"check-identity", "--which", "9.9"}).exit_code == 1);
  CHECK(run({"cn-witness", "--poly", (tmp.path / "none.txt").string()}).exit_code == 1);
}

TEST_CASE("cn-witness subcommand") {
  TempDir tmp;
  const auto poly = tmp.write("f.txt", "x1 - x2");
  const auto grid = tmp.write("g.json", R"({"sets": [[0,1],[0,1]], "degrees": [1,0]})");
  auto r = run({"cn-witness", "--poly", poly, "--grid", grid});
  CHECK(r.exit_code == 0);
  auto j = report(r);
  CHECK(j["result"]["certificate"]["coefficient"] == 1);
  CHECK(j["result"]["search"]["witness"] == json::array({0, 1}));
  CHECK(j["verification"]["is_witness"] == true);

  // x1 vanishes on {0} x {0,1}; the certificate coefficient at x2 is zero.
  const auto vanishing = tmp.write("h.txt", "x1");
  const auto thin = tmp.write("t.json", R"({"sets": [[0],[0,1]], "degrees": [0,1]})");
  r = run({"cn-witness", "--poly", vanishing, "--grid", thin});
  CHECK(r.exit_code == 2);
  CHECK(report(r)["result"]["certificate"]["coefficient"] == 0);
  CHECK(report(r)["result"]["search"]["status"] == "none_qualify");
}

TEST_CASE("sumset subcommand") {
  TempDir tmp;
  const auto p12 = tmp.write("p12.json", R"({"n":2,"m":1,"k":2,"A":[[1,2],[1,2]],"B":[[1,2],[1,2]],"c":[1,2],
                                            "P":[[0,1],[0,1]],"Q":[[0,1],[0,1]]})");
  auto r = run({"--field", "5", "sumset", "--theorem", "1.2", "--params", p12});
  CHECK(r.exit_code == 0);
  auto j = report(r);
  CHECK(j["result"]["witness"]["a"] == json::array({1, 2}));
  CHECK(j["result"]["witness"]["b"] == json::array({1, 2}));
  CHECK(j["verification"]["failed_clauses"].empty());

  const auto big = tmp.write("big.json", R"({"n":2,"m":1,"k":5})");
  r = run({"--field", "5", "sumset", "--theorem", "1.2", "--params", big});
  CHECK(r.exit_code == 1);
  CHECK(report(r)["error"]["message"].get<std::string>().find("characteristic 5") != std::string::npos);

  const auto gen = tmp.write("gen.json", R"({"n":2,"m":1,"k":3})");
  r = run({"--field", "7", "--seed", "3", "sumset", "--theorem", "1.2", "--params", gen});
  CHECK(r.exit_code == 0);
  CHECK(report(r)["result"]["instance"]["generated"] == true);
  CHECK(run({"--field", "7", "--seed", "3", "sumset", "--theorem", "1.2", "--params", gen}).output == r.output);

  r = run({"--group", "Z/7", "sumset", "--theorem", "1.3", "--params", gen});
  CHECK(r.exit_code == 0);
  CHECK(report(r)["verification"]["failed_clauses"].empty());

  const auto p51 = tmp.write("p51.json", R"({"n":2,"m":1,"k":2,"A":[[0,1],[2,3]],"P":[[0,1],[0,2]]})");
  r = run({"--field", "7", "sumset", "--theorem", "5.1", "--params", p51});
  CHECK(r.exit_code == 0);
  j = report(r);
  CHECK(j["result"]["sumset"]["elements"] == json::array({2, 3}));
  CHECK(j["verification"]["bound_met"] == true);

  const auto p14 = tmp.write("p14.json", R"({"n":3,"m":1,"k":4})");
  r = run({"--field", "11", "--seed", "5", "sumset", "--theorem", "1.4", "--params", p14});
  CHECK(r.exit_code == 0);
  CHECK(report(r)["verification"]["permanent_nonzero"] == true);

  const auto c51 = tmp.write("c51.json", R"({"n":3})");
  r = run({"--field", "7", "--seed", "2", "sumset", "--theorem", "c5.1", "--params", c51});
  CHECK(r.exit_code == 0);
  CHECK(report(r)["verification"]["permanent_nonzero"] == true);

  CHECK(run({"--field", "7", "sumset", "--theorem", "9.9", "--params", c51}).exit_code == 1);
}
