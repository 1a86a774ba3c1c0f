#include <doctest.h>

#include <cmath>
#include <random>

#include "cantor/error.hpp"
#include "cantor/map_core.hpp"

using namespace cantor;

namespace {

RationalMap quadratic_plus_five() { return RationalMap("z^2+5", Poly{5.0, 0.0, 1.0}, Poly{1.0}); }

RationalMap cubic(double b) { return RationalMap("cubic", Poly{b, -3.0, 0.0, 1.0}, Poly{1.0}); }

}  // namespace

TEST_CASE("critical points of z^2+5") {
  auto crit = critical_points(quadratic_plus_five());
  REQUIRE(crit.size() == 2);
  int finite = 0;
  for (const auto& c : crit) {
    if (c.point.infinite) continue;
    ++finite;
    CHECK(std::abs(c.point.z) < 1e-12);
    CHECK(c.local_degree == 2);
  }
  CHECK(finite == 1);
}

TEST_CASE("critical multiplicity sums to 2d-2") {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + trial % 4;
    Poly p(d + 1), q(d);
    for (auto& c : p) c = {g(rng), g(rng)};
    for (auto& c : q) c = {g(rng), g(rng)};
    RationalMap rat("random", p, q);
    RationalMap pol("random poly", p, Poly{1.0});
    for (const auto* m : {&rat, &pol}) {
      int total = 0;
      for (const auto& c : critical_points(*m)) total += c.local_degree - 1;
      CHECK(total == 2 * m->degree() - 2);
    }
  }
}

TEST_CASE("unicritical cubic has one triple critical point") {
  RationalMap m("z^3+1", Poly{1.0, 0.0, 0.0, 1.0}, Poly{1.0});
  auto crit = critical_points(m);
  REQUIRE(crit.size() == 2);
  CHECK(crit[0].local_degree == 3);
  CHECK(std::abs(crit[0].point.z) < 1e-9);
}

TEST_CASE("fixed points of z^2+5") {
  auto fps = fixed_points(quadratic_plus_five());
  int repelling = 0, super_inf = 0;
  for (const auto& f : fps) {
    if (f.point.infinite && f.kind == FixedPointClass::Superattracting) ++super_inf;
    if (!f.point.infinite && f.kind == FixedPointClass::Repelling) ++repelling;
  }
  CHECK(super_inf == 1);
  CHECK(repelling == 2);
}

TEST_CASE("pole images") {
  RationalMap m("(z^2+1)/z", Poly{1.0, 0.0, 1.0}, Poly{0.0, 1.0});
  CHECK(m(ExtPoint::at(0.0)).infinite);
  ExtPoint w = m(ExtPoint::at({0.0, 1.0}));
  CHECK_FALSE(w.infinite);
  CHECK(std::abs(w.z) < 1e-15);
  ExtPoint inf = m(ExtPoint::inf());
  CHECK(inf.infinite);
}

TEST_CASE("parabolic point at infinity is rejected") {
  RationalMap m("z+1/z", Poly{1.0, 0.0, 1.0}, Poly{0.0, 1.0});
  auto fps = fixed_points(m);
  REQUIRE(fps.size() == 1);
  CHECK(fps[0].kind == FixedPointClass::Indifferent);
  CHECK_THROWS_AS(basin_certificate(m), Error);
}

TEST_CASE("escape times") {
  auto m = quadratic_plus_five();
  CHECK(escape_radius(m) == doctest::Approx(6.0));
  CHECK(escape_time(m, 0.0, 100).value() == 2);
  CHECK(escape_time(m, 10.0, 100).value() == 0);
  CHECK_THROWS_AS(escape_time(m, 0.0, -1), Error);
}

TEST_CASE("escape radius is forward invariant") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  for (double b : {0.37, 2.5, -1.0}) {
    auto m = cubic(b);
    double r = escape_radius(m);
    for (int k = 0; k < 200; ++k) {
      cplx z = std::polar(2.0 * r, u(rng));
      CHECK(std::abs(m(z)) > std::abs(z));
    }
  }
}

TEST_CASE("degenerate input") {
  CHECK_THROWS_AS(RationalMap("zero den", Poly{1.0, 0.0, 1.0}, Poly{0.0}), Error);
  CHECK_THROWS_AS(RationalMap("linear", Poly{1.0, 2.0}, Poly{1.0}), Error);
  CHECK_THROWS_AS(RationalMap("nan", Poly{NAN, 0.0, 1.0}, Poly{1.0}), Error);
  // (z^2 - 1)/(z - 1) reduces to z + 1
  CHECK_THROWS_AS(RationalMap("cancels", Poly{-1.0, 0.0, 1.0}, Poly{-1.0, 1.0}), Error);
  CHECK_THROWS_AS(parse_map_json("{\"numerator\": [[1, 0], [\"x\", 0], [1, 0]]}"), Error);
  CHECK_THROWS_AS(parse_map_json("{\"label\": 3"), Error);
}

TEST_CASE("conjugating a finite attracting point to infinity") {
  RationalMap newton("newton z^2-1", Poly{1.0, 0.0, 1.0}, Poly{0.0, 2.0});
  auto cert = basin_certificate(newton);
  REQUIRE(cert.conjugated);
  const RationalMap& g = cert.normalized;
  cplx p = cert.moved_point;
  CHECK(std::abs(std::abs(p) - 1.0) < 1e-12);
  bool inf_super = false;
  for (const auto& f : fixed_points(g))
    if (f.point.infinite && f.kind == FixedPointClass::Superattracting) inf_super = true;
  CHECK(inf_super);
  for (cplx z : {cplx(0.3, 0.7), cplx(-2.0, 0.5), cplx(4.0, -1.0)}) {
    cplx lhs = g(1.0 / (z - p));
    cplx rhs = 1.0 / (newton(z) - p);
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(rhs));
  }
}

TEST_CASE("json round trip keeps long coefficients") {
  std::string long_b = "0.371234567890123456789012345678901234567890";
  std::string text = "{\"label\": \"c\", \"numerator\": [[\"" + long_b +
                     "\", 0], [-3, 0], [0, 0], [1, 0]], \"denominator\": [[1, 0]], \"notes\": \"n\"}";
  auto m = parse_map_json(text);
  CHECK(m.degree() == 3);
  CHECK(m.coefficient_digits() >= 42);
  auto again = parse_map_json(map_to_json(m));
  CHECK(again.numerator_text()[0].re == long_b);
  CHECK(again.label() == "c");
  PrecisionGuard guard(200);
  auto big = again.big_coefficients();
  BigFloat diff = big[0].re - parse_big(long_b);
  CHECK(boost::multiprecision::abs(diff) < BigFloat(1e-40));
}

TEST_CASE("basin certificate of z^2+5") {
  auto cert = basin_certificate(quadratic_plus_five());
  CHECK_FALSE(cert.conjugated);
  CHECK(cert.escaping.size() == 1);
  CHECK(cert.bounded.empty());
  CHECK(cert.cantor_status == "certified");
}
