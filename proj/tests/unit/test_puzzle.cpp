#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "cantor/error.hpp"
#include "cantor/puzzle.hpp"

using namespace cantor;

namespace {

RationalMap quadratic_plus_five() { return RationalMap("z^2+5", Poly{5.0, 0.0, 1.0}, Poly{1.0}); }

}  // namespace

TEST_CASE("green function basics") {
  Poly f{5.0, 0.0, 1.0};
  CHECK(green(f, 0.0) > 0);
  // G(f(z)) = d G(z)
  cplx z(0.3, 2.1);
  CHECK(std::abs(green(f, horner(f, z)) - 2 * green(f, z)) < 1e-9);
  CHECK(std::abs(green(f, 1e6) - std::log(1e6)) < 1e-6);
}

TEST_CASE("z^2+5 has two depth-0 pieces and no Julia critical point") {
  Puzzle pz(quadratic_plus_five());
  CHECK(pz.depth0_count() == 2);
  CHECK(pz.julia_critical().empty());
  CHECK(pz.level(1) == doctest::Approx(pz.level(0) / 2));
  // the escaping critical point sits outside the pieces
  CHECK(pz.locate0(0.0) == -1);
}

TEST_CASE("z^2+5 pieces: binary tree of itineraries") {
  Puzzle pz(quadratic_plus_five());
  for (int s = 0; s < 40; ++s) pz.add_julia_orbit(14, 100 + s);
  // one piece per distinct label word of length depth + 1
  for (int depth = 0; depth <= 6; ++depth) {
    std::set<std::string> words;
    std::set<int> pieces;
    for (int o = 0; o < pz.orbit_count(); ++o) {
      std::string w;
      for (int k = 0; k <= depth; ++k) w += static_cast<char>('0' + pz.orbit_label(o, k));
      words.insert(w);
      pieces.insert(pz.piece_of(o, 0, depth));
    }
    CHECK(words.size() == pieces.size());
  }
  // agreement equals the length of the common label prefix minus one
  for (int a = 0; a < pz.orbit_count(); ++a)
    for (int b = a + 1; b < pz.orbit_count(); ++b) {
      int k = 0;
      while (k < 14 && pz.orbit_label(a, k) == pz.orbit_label(b, k)) ++k;
      int expect = k - 1;
      int got = pz.agreement(a, 0, b, 0);
      if (k < 14) CHECK(got == expect);
      else CHECK(got >= 13);
    }
}

TEST_CASE("puzzle rejects rational maps") {
  RationalMap newton("newton", Poly{-1.0, 0.0, 0.0, 2.0}, Poly{0.0, 0.0, 3.0});
  CHECK_THROWS_AS(Puzzle{newton}, Error);
}
