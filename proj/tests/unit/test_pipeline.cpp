#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cantor/error.hpp"
#include "cantor/pipeline.hpp"

using namespace cantor;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("cantor_unit_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("stages pull in their prerequisites in order") {
  using V = std::vector<std::string>;
  CHECK(expand_stages({"all"}) == V{"map", "puzzle", "tableau", "nest", "geometry", "measure"});
  CHECK(expand_stages({"measure", "puzzle"}) == V{"map", "puzzle", "measure"});
  CHECK(expand_stages({"nest"}) == V{"map", "puzzle", "tableau", "nest"});
  CHECK(expand_stages({"geometry"}) == V{"map", "puzzle", "geometry"});
  CHECK_THROWS_AS(expand_stages({"puzzle", "bogus"}), Error);
}

TEST_CASE("input errors exit 2 and name the path") {
  Manifest m;
  m.map_path = "/nonexistent/z.json";
  m.out_dir = scratch("missing").string();
  auto r = run_analyze(m);
  CHECK(r.exit_code == 2);
  CHECK(r.error.find("/nonexistent/z.json") != std::string::npos);

  Manifest both;
  both.map_path = std::string(CANTOR_CORPUS_DIR) + "/z2p5.json";
  both.symbolic = "W:2";
  CHECK(run_analyze(both).exit_code == 2);

  Manifest bad_stage;
  bad_stage.symbolic = "W:2";
  bad_stage.stages = {"tableaux"};
  CHECK(run_analyze(bad_stage).exit_code == 2);
}

TEST_CASE("a broken stage exits 3 with its name") {
  Manifest m;
  m.symbolic = "W";  // no lag
  m.out_dir = scratch("broken").string();
  auto r = run_analyze(m);
  CHECK(r.exit_code == 3);
  CHECK(r.error.rfind("stage map:", 0) == 0);
}

TEST_CASE("symbolic run writes its reports and repeats byte for byte") {
  Manifest m;
  m.symbolic = "W:2";
  m.symbolic_length = 100000;
  m.nest_levels = 2;
  m.out_dir = scratch("sym_a").string();
  auto a = run_analyze(m);
  CHECK(a.exit_code == 0);
  for (const char* f : {"model.txt", "tableau_rules.txt", "crit_graph.txt", "nest.txt", "witness.txt",
                        "classification.txt", "summary.txt"})
    CHECK(fs::exists(fs::path(m.out_dir) / f));
  std::string nest = slurp(fs::path(m.out_dir) / "nest.txt");
  CHECK(nest.find("synthetic instance") != std::string::npos);
  CHECK(nest.find("failed 0") != std::string::npos);

  Manifest m2 = m;
  m2.out_dir = scratch("sym_b").string();
  auto b = run_analyze(m2);
  REQUIRE(a.files == b.files);
  for (const auto& f : a.files) CHECK(slurp(fs::path(m.out_dir) / f) == slurp(fs::path(m2.out_dir) / f));
}

TEST_CASE("z^2+5 puzzle and measure stages") {
  Manifest m;
  m.map_path = std::string(CANTOR_CORPUS_DIR) + "/z2p5.json";
  m.stages = {"puzzle", "measure"};
  m.depth = 8;
  m.samples = 2000;
  m.out_dir = scratch("z2p5").string();
  auto r = run_analyze(m);
  CHECK(r.exit_code == 0);
  std::string csv = slurp(fs::path(m.out_dir) / "density.csv");
  CHECK(csv.rfind("piece_id,depth,area,fraction,halfwidth,samples\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);  // header and depths 0..8
  CHECK(fs::exists(fs::path(m.out_dir) / "puzzle.svg"));
  CHECK(slurp(fs::path(m.out_dir) / "summary.txt").find("exit 0") != std::string::npos);
}

TEST_CASE("suites") {
  CHECK(suite_names().size() == 5);
  CHECK_THROWS_AS(run_suite("bogus", CANTOR_CORPUS_DIR, 1), Error);
  auto d = run_suite("density", CANTOR_CORPUS_DIR, 3);
  CHECK(d.pass());
  CHECK(format_suite(d).find("PASS density") != std::string::npos);
}
