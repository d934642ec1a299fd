#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rlab/arithmetic.hpp"
#include "rlab/cli.hpp"
#include "rlab/errors.hpp"
#include "rlab/hypergraph.hpp"

using namespace rlab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "removal-lab");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("rlab-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

const char* kK3 = "2 3\n0 1\n0 2\n1 2\n";
const char* kK4 = "2 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

}  // namespace

TEST_CASE("count") {
  TempDir tmp;
  const auto k3 = tmp.write("k3.hg", kK3);
  auto r = run({"count", "--graph", k3, "--motif", "triangle"});
  CHECK(r.code == 0);
  CHECK(r.report().at("count") == 6);
  r = run({"count", "--graph", k3, "--motif", "3;0 1;1 2"});
  CHECK(r.report().at("count") == 12);
  const auto zn = tmp.write("a.zn", "4\n0\n2\n");
  r = run({"count", "--zn", zn, "--k", "3"});
  CHECK(r.code == 0);
  CHECK(r.report().at("count") == 4);
  const auto grid = tmp.write("a.grid", "4\n0 0\n");
  r = run({"count", "--grid", grid});
  CHECK(r.report().at("count") == 1);
}

TEST_CASE("embed") {
  TempDir tmp;
  const auto k3 = tmp.write("k3.hg", kK3);
  auto r = run({"embed", "--graph", k3, "--event", "A(1,2)"});
  CHECK(r.code == 0);
  CHECK(r.report().at("p").at("num") == 2);
  CHECK(r.report().at("p").at("den") == 3);
  r = run({"embed", "--graph", k3, "--event", "A(1,2)", "--event", "A(1,2) & A(2,3) & A(1,3)"});
  CHECK(r.report().at("results").size() == 2);
  CHECK(r.report().at("results")[1].at("p").at("den") == 9);
  const auto zn = tmp.write("a.zn", "6\n0\n1\n");
  r = run({"embed", "--zn", zn, "--m", "3", "--event", "A[0] & A[1]"});
  CHECK(r.code == 0);
  CHECK(r.report().at("p").at("den") == 12);
  r = run({"embed", "--graph", k3, "--event", "A(1,2) &"});
  CHECK(r.code == 2);
  CHECK(r.err.find("position") != std::string::npos);
}

TEST_CASE("remove") {
  TempDir tmp;
  const auto k4 = tmp.write("k4.hg", kK4);
  const auto saved = (tmp.path / "out.hg").string();
  auto r = run({"remove", "--graph", k4, "--motif", "triangle", "--method", "greedy", "--save-graph", saved});
  CHECK(r.code == 0);
  CHECK(r.report().at("residual_copies") == 0);
  CHECK(triangle_count(load_hypergraph(saved)) == 0);
  r = run({"remove", "--graph", k4, "--method", "partition", "--seed", "3", "--polls", "2"});
  CHECK(r.code == 0);
  CHECK(r.report().at("residual_copies") == 0);
  r = run({"remove", "--graph", k4, "--method", "strong", "--seed", "3"});
  CHECK(r.code == 0);
  r = run({"remove", "--graph", k4, "--method", "partition"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--seed") != std::string::npos);
}

TEST_CASE("uip-demo") {
  TempDir tmp;
  auto r = run({"uip-demo", "--three-point"});
  CHECK(r.code == 0);
  CHECK(r.report().at("solution").at("certificate").at("valid") == true);
  const auto saved = (tmp.path / "p.json").string();
  r = run({"uip-demo", "--generate", "4", "--filtrations", "--save-problem", saved});
  CHECK(r.code == 0);
  auto back = run({"uip-demo", "--problem", saved});
  CHECK(back.code == 0);
  CHECK(back.report().at("solution") == r.report().at("solution"));
  r = run({"uip-demo", "--generate", "4", "--epsilon", "1/100"});
  CHECK(r.code == 0);
  const auto bad = tmp.write("bad.json", "{ not json");
  CHECK(run({"uip-demo", "--problem", bad}).code == 2);
}

TEST_CASE("converge") {
  TempDir tmp;
  const auto csv = (tmp.path / "t.csv").string();
  auto r = run({"converge", "--random", "8,12,16", "--p", "0.5", "--event", "A(1,2)", "--seed", "1", "--csv", csv,
                "--tol", "0.2"});
  CHECK(r.code == 0);
  CHECK(fs::exists(csv));
  CHECK(r.report().contains("subsequence"));
  CHECK(run({"converge", "--random", "8,12", "--event", "A(1,2)"}).code == 2);
}

TEST_CASE("regcurve") {
  auto r = run({"regcurve", "--random", "40,0.5", "--polls", "0,2,4", "--trials", "4", "--seed", "2"});
  CHECK(r.code == 0);
  CHECK(r.report().at("curve").size() == 3);
  CHECK(run({"regcurve", "--random", "40,0.5"}).code == 2);
}

TEST_CASE("shiftsys") {
  TempDir tmp;
  const auto grid = tmp.write("g.grid", "5\n0 0\n1 0\n0 1\n3 2\n4 4\n");
  auto r = run({"shiftsys", "--grid", grid, "--N", "2", "--window", "2"});
  CHECK(r.code == 0);
  CHECK(r.report().at("identity_holds") == true);
  CHECK(r.report().at("inequality_holds") == true);
  CHECK(r.report().at("recurrence").size() == 5);
}

TEST_CASE("errors and help") {
  auto r = run({});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"count", "--no-such-flag"}).code == 2);
  CHECK(run({"count", "--graph", "/nonexistent/file.hg"}).code == 2);
  r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("expr  :=") != std::string::npos);
  r = run({"embed", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--event") != std::string::npos);
  CHECK(event_grammar_help().find("'&' binds tighter") != std::string::npos);
}

TEST_CASE("motif parsing") {
  CHECK(parse_motif("triangle").is_triangle());
  auto m = parse_motif("4; 0 1 ; 2 3");
  CHECK(m.v0 == 4);
  CHECK(m.edges.size() == 2);
  CHECK_THROWS_AS(parse_motif("3;0 5"), InputError);
  CHECK_THROWS_AS(parse_motif("x;0 1"), InputError);
}

TEST_CASE("out file and timing") {
  TempDir tmp;
  const auto k3 = tmp.write("k3.hg", kK3);
  const auto out = (tmp.path / "r.json").string();
  auto r = run({"count", "--graph", k3, "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  CHECK(json::parse(f).at("count") == 6);
  r = run({"count", "--graph", k3, "--timing"});
  CHECK(r.report().contains("timing"));
}

TEST_CASE("reports do not depend on the thread count") {
  TempDir tmp;
  const auto g = tmp.write("g.hg", hypergraph_to_string(random_hypergraph(40, 2, 0.4, 5)));
  const std::vector<std::vector<std::string>> pipelines = {
      {"embed", "--graph", g, "--event", "A(1,2) & A(2,3) & A(1,3)", "--mode", "mc", "--samples", "20000", "--seed", "3"},
      {"remove", "--graph", g, "--method", "greedy", "--list-edges"},
      {"remove", "--graph", g, "--method", "partition", "--seed", "9", "--list-edges"},
      {"remove", "--graph", g, "--method", "strong", "--seed", "9"},
      {"uip-demo", "--generate", "11", "--filtrations"},
      {"converge", "--random", "10,20,30", "--event", "A(1,2)", "--mode", "mc", "--samples", "5000", "--seed", "2"},
      {"regcurve", "--graph", g, "--polls", "0,2,4", "--trials", "5", "--seed", "6"},
  };
  for (const auto& base : pipelines) {
    std::string first;
    for (const char* threads : {"1", "2", "8"}) {
      auto args = base;
      args.push_back("--threads");
      args.push_back(threads);
      const auto r = run(args);
      REQUIRE(r.code == 0);
      if (first.empty())
        first = r.out;
      else
        CHECK(r.out == first);
    }
  }
}
