#include <doctest.h>

#include <map>
#include <random>
#include <tuple>

#include "cantor/error.hpp"
#include "cantor/symbolic.hpp"

using namespace cantor;

namespace {

// Pieces straight from the pullback description: P_n(x) = P_n(y) iff the
// depth-0 pieces agree, P_{n-1}(fx) = P_{n-1}(fy), and inside V either
// P_{n-1}(fx) holds f(c) (one preimage component) or x, y sit on the same
// side of c (two components).
struct PullbackOracle {
  const SymbolicPuzzle& sp;
  std::map<std::tuple<int, int, int, int, int>, bool> memo;

  char sym(int o, int t) const { return sp.itinerary(o)[t]; }
  int len(int o) const { return static_cast<int>(sp.itinerary(o).size()); }

  bool same(int n, int oa, int ta, int ob, int tb) {
    auto key = std::make_tuple(n, oa, ta, ob, tb);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool va = sym(oa, ta) != 'W', vb = sym(ob, tb) != 'W';
    bool r = va == vb;
    if (r && n > 0) {
      r = same(n - 1, oa, ta + 1, ob, tb + 1);
      if (r && va) {
        char a = sym(oa, ta), b = sym(ob, tb);
        bool branch = a == 'c' || b == 'c' || a == b;
        r = branch || same(n - 1, oa, ta + 1, 0, 1);
      }
    }
    memo[key] = r;
    return r;
  }
};

std::string random_itinerary(std::mt19937& rng, int n) {
  const char* s = "W-+";
  std::string out;
  for (int i = 0; i < n; ++i) out += s[rng() % 3];
  return out;
}

}  // namespace

TEST_CASE("kneading itinerary with lag 2 starts with the Fibonacci pattern") {
  CHECK(kneading_itinerary("W", 2, 36) == "W++W-W+-W++W+W++W-W++W++W-W+-W++W-W+");
  CHECK_THROWS_AS(kneading_itinerary("", 2, 10), Error);
  CHECK_THROWS_AS(kneading_itinerary("Wx", 2, 10), Error);
}

TEST_CASE("symbolic agreement matches the pullback oracle") {
  std::mt19937 rng(7);
  SymbolicPuzzle sp(kneading_itinerary("W", 2, 60));
  for (int i = 0; i < 6; ++i) sp.add_itinerary(random_itinerary(rng, 30));
  // orbits that shadow the critical orbit for a while, then leave
  std::string crit = sp.itinerary(0);
  for (int cut : {5, 9, 14}) sp.add_itinerary(crit.substr(1, cut) + random_itinerary(rng, 30 - cut));
  PullbackOracle oracle{sp, {}};
  int compared = 0;
  for (int a = 0; a < sp.orbit_count(); ++a)
    for (int b = 0; b < sp.orbit_count(); ++b)
      for (int ta = 0; ta < 6; ++ta)
        for (int tb = 0; tb < 6; ++tb) {
          if (a == b && ta == tb) continue;
          const int cap = std::min(oracle.len(a) - ta, oracle.len(b) - tb) - 2;
          int expect = -1;
          while (expect + 1 < cap && oracle.same(expect + 1, a, ta, b, tb)) ++expect;
          int got = sp.agreement(a, ta, b, tb);
          if (expect + 1 < cap) {
            CHECK(got == expect);
            ++compared;
          } else {
            CHECK(got >= expect);
          }
        }
  CHECK(compared > 1000);
}

TEST_CASE("symbolic pieces nest and map onto pieces") {
  SymbolicPuzzle sp(kneading_itinerary("W", 2, 400));
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) sp.add_itinerary(random_itinerary(rng, 60));
  for (int o = 0; o < sp.orbit_count(); ++o)
    for (int t = 0; t < 10; ++t)
      for (int n = 1; n < 30; ++n) {
        int id = sp.piece_of(o, t, n);
        const PieceNode& node = sp.node(id);
        CHECK(node.depth == n);
        CHECK(node.parent == sp.piece_of(o, t, n - 1));
        CHECK(node.image == sp.piece_of(o, t + 1, n - 1));
      }
}

TEST_CASE("critical itinerary may not return to c") {
  CHECK_THROWS_AS(SymbolicPuzzle("W+c"), Error);
}
