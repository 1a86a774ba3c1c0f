#include <doctest.h>

#include "cantor/error.hpp"
#include "cantor/measure.hpp"
#include "cantor/puzzle.hpp"
#include "cantor/symbolic.hpp"

using namespace cantor;

TEST_CASE("density probes on z^2+5") {
  Puzzle pz(load_map(CANTOR_CORPUS_DIR "/z2p5.json"));
  int o = pz.add_julia_orbit(10, 3);
  auto rows = density_chain(pz, o, 6, 2000, 200, 5);
  REQUIRE(rows.size() == 7);
  for (size_t n = 0; n < rows.size(); ++n) {
    CHECK(rows[n].julia_fraction >= 0);
    CHECK(rows[n].julia_fraction <= 1);
    CHECK(rows[n].sample_count == 2000);
    if (n > 0) {
      CHECK(rows[n].area_estimate < rows[n - 1].area_estimate);
      CHECK(rows[n].julia_fraction <= rows[n - 1].julia_fraction + rows[n - 1].halfwidth);
    }
  }
  CHECK(rows.back().julia_fraction < 0.05);

  // zero iterations: nothing has escaped yet
  CHECK(density_probe(pz, rows[0].piece, 500, 0, 1).julia_fraction == 1.0);
  // a disk far out in the basin
  auto far = density_probe_region(pz.map(), circle_polygon({10, 0}, 1, 64), 1000, 200, 2);
  CHECK(far.julia_fraction == 0.0);
  CHECK(far.area_estimate == doctest::Approx(3.14).epsilon(0.05));
}

TEST_CASE("density half-width shrinks like one over root n") {
  Puzzle pz(load_map(CANTOR_CORPUS_DIR "/z2p5.json"));
  Polygon disk = circle_polygon({0, 0}, 0.8, 64);
  // bounded in one step, escaping later: a fraction strictly between 0 and 1
  auto a = density_probe_region(pz.map(), disk, 400, 1, 9);
  auto b = density_probe_region(pz.map(), disk, 6400, 1, 9);
  CHECK(a.julia_fraction > 0);
  CHECK(a.julia_fraction <= 1);
  CHECK(b.halfwidth < a.halfwidth / 3);
}

TEST_CASE("points are sorted into X1..X4 on the Fibonacci model") {
  SymbolicPuzzle sp(kneading_itinerary("W", 2, 4000));
  const std::string crit = sp.itinerary(0);
  int pre = sp.add_itinerary("W" + crit);
  int image = sp.add_itinerary(crit.substr(1));
  ClassifyCaps caps;
  caps.child_k = 128;
  CritGraph g = classify(sp, caps);
  REQUIRE(g.type[0] == CritType::Persistent);

  PointClass a = classify_point(sp, g, pre);
  CHECK(a.id == PointClassId::X1);
  CHECK(a.preimage_time == 1);

  PointClass b = classify_point(sp, g, image);
  CHECK(b.id == PointClassId::X4);
  CHECK(b.crit == std::vector<int>{0});
  CHECK(b.crit_p == std::vector<int>{0});
  CHECK_THROWS_AS(first_return_degrees(sp, g, b), Error);
}

TEST_CASE("a point accumulating on a non-recurrent critical point") {
  // f(c) stays in W, so T(c) is non-critical
  SymbolicPuzzle sp(std::string(400, 'W'));
  std::string x = "W";
  for (int k = 1; k < 30; ++k) x += "+" + std::string(k, 'W');
  int o = sp.add_itinerary(x.substr(0, 420));
  CritGraph g = classify(sp, {16, 300, 32});
  REQUIRE(g.non_critical[0]);
  PointClass pc = classify_point(sp, g, o, {16, 300});
  CHECK(pc.id == PointClassId::X2);
  CHECK(pc.crit_n == std::vector<int>{0});
  FirstReturns fr = first_return_degrees(sp, g, pc, {16, 300});
  CHECK(fr.case_id == 2);
  CHECK(!fr.times.empty());
  CHECK(fr.ok());
  for (size_t i = 1; i < fr.times.size(); ++i) CHECK(fr.times[i] > fr.times[i - 1]);

  FirstReturns bad = fr;
  bad.degrees[0] = bad.bound + 1;
  CHECK_FALSE(bad.ok());
}

TEST_CASE("corpus Julia points are in X2 and keep their class as caps grow") {
  Puzzle pz(load_map(CANTOR_CORPUS_DIR "/cubic_b.json"));
  pz.ensure_critical_length(540);
  auto& e = pz.engine();
  CritGraph g = classify(e);
  for (int s = 0; s < 3; ++s) {
    int o = pz.add_julia_orbit(600, 70 + s);
    PointClass small = classify_point(e, g, o, {12, 128});
    PointClass large = classify_point(e, g, o, {24, 512});
    CHECK(large.id == PointClassId::X2);
    if (small.id != PointClassId::Undetermined) CHECK(small.id == large.id);
    FirstReturns fr = first_return_degrees(e, g, large);
    CHECK(fr.ok());
    CHECK(fr.p0 >= 0);
  }
}

TEST_CASE("puzzle invariants on the corpus at small depth") {
  for (const char* name : {"z2p5", "cubic_b"}) {
    Puzzle pz(load_map(std::string(CANTOR_CORPUS_DIR "/") + name + ".json"));
    PuzzleCheck r = check_puzzle(pz, 7, 60, 11);
    INFO(name);
    CHECK(r.nesting_tests == 7 * 60);
    CHECK(r.nesting_failures == 0);
    CHECK(r.disjoint_failures == 0);
    CHECK(r.image_failures == 0);
    CHECK(r.shrinking);
    CHECK(r.pass());
  }
}
