#include <doctest.h>

#include <chrono>
#include <cmath>

#include "cantor/error.hpp"
#include "cantor/geometry.hpp"

using namespace cantor;

namespace {

// Oracle for the slit modulus: nome series for K'/K, independent of the AGM.
double slit_modulus_series(double r) {
  // q = exp(-pi K'/K); k = 4 sqrt(q) prod ((1+q^{2n})/(1+q^{2n-1}))^4, solved by bisection on q.
  auto modulus_of = [](double q) {
    double p = 1.0;
    for (int n = 1; n < 200; ++n) {
      double f = (1.0 + std::pow(q, 2 * n)) / (1.0 + std::pow(q, 2 * n - 1));
      p *= f * f * f * f;
    }
    return 4.0 * std::sqrt(q) * p;
  };
  double lo = 1e-300, hi = 0.999;
  for (int i = 0; i < 300; ++i) {
    double mid = std::sqrt(lo * hi);
    if (modulus_of(mid) < r) lo = mid;
    else hi = mid;
  }
  double q = std::sqrt(lo * hi);
  double kp_over_k = -std::log(q) / M_PI;
  return kp_over_k / 4.0;
}

Polygon star(double base, double amp, int freq, int n, double power = 1.0) {
  Polygon p(n);
  for (int i = 0; i < n; ++i) {
    double th = 2.0 * M_PI * i / n;
    double rho = std::pow(base * (1.0 + amp * std::cos(freq * th)), power);
    p[i] = std::polar(rho, th);
  }
  return p;
}

}  // namespace

TEST_CASE("slit modulus matches the nome series") {
  for (double r : {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    CHECK(grotzsch_modulus(r) == doctest::Approx(slit_modulus_series(r)).epsilon(1e-10));
  }
  CHECK(grotzsch_modulus(1e-6) == doctest::Approx(std::log(4e6) / (2 * M_PI)).epsilon(1e-9));
  double prev = INFINITY;
  for (int i = 1; i < 20; ++i) {
    double m = grotzsch_modulus(i / 20.0);
    CHECK(m < prev);
    prev = m;
  }
  CHECK(grotzsch_radius(grotzsch_modulus(0.37)) == doctest::Approx(0.37).epsilon(1e-12));
  CHECK_THROWS_AS(grotzsch_modulus(0.0), Error);
  CHECK_THROWS_AS(grotzsch_radius(-1.0), Error);
}

TEST_CASE("gap and shape constants") {
  auto k1 = gap_constant(0.5);
  CHECK(grotzsch_modulus(k1.r0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(k1.c == doctest::Approx((1 - k1.r0) * (1 - k1.r0) / (8 * k1.r0)));
  auto k2 = shape_constant(1.0, 2);
  CHECK(k2.c0 == doctest::Approx(1.0 / grotzsch_radius(0.5)));
  CHECK(k2.c1 == doctest::Approx((k2.c0 - 1) / (2 * k2.c0)));
  CHECK(k2.k == doctest::Approx(k2.c2 / k2.c1));
}

TEST_CASE("shape of round and square regions") {
  CHECK(shape(circle_polygon(0.0, 2.0, 4096), 0.0) == doctest::Approx(1.0).epsilon(1e-5));
  Polygon square{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  CHECK(shape(square, 0.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(shape(square, cplx(3.0, 0.0)), Error);
  CHECK_THROWS_AS(shape(square, cplx(1.0, 0.0)), Error);
}

TEST_CASE("round annulus modulus") {
  for (double big : {2.0, 5.0, 40.0}) {
    auto rep = modulus(circle_polygon(0.0, big, 2048), circle_polygon(0.0, 1.0, 2048));
    double exact = std::log(big) / (2 * M_PI);
    CHECK(rep.estimate == doctest::Approx(exact).epsilon(0.02));
    CHECK(rep.primal <= rep.dual + 1e-12 + 0.03 * exact);
  }
}

TEST_CASE("modulus is a conformal invariant under z^d coverings") {
  for (int d : {2, 3}) {
    Polygon outer_v = star(0.9, 0.08, 3, 3000), inner_v = star(0.05, 0.3, 2, 3000);
    Polygon outer_u = star(0.9, 0.08, 3 * d, 3000), inner_u = star(0.05, 0.3, 2 * d, 3000);
    // The z^d preimage of a star-shaped curve rho(theta) is rho(d theta)^(1/d).
    for (int i = 0; i < 3000; ++i) {
      double th = 2.0 * M_PI * i / 3000;
      outer_u[i] = std::polar(std::pow(0.9 * (1 + 0.08 * std::cos(3 * d * th)), 1.0 / d), th);
      inner_u[i] = std::polar(std::pow(0.05 * (1 + 0.3 * std::cos(2 * d * th)), 1.0 / d), th);
    }
    auto mv = modulus(outer_v, inner_v);
    auto mu = modulus(outer_u, inner_u);
    CHECK(mv.estimate == doctest::Approx(d * mu.estimate).epsilon(0.04));
  }
}

TEST_CASE("thin slit approaches the extremal modulus") {
  for (double r : {0.2, 0.5}) {
    Polygon slit(2000);
    for (int i = 0; i < 2000; ++i) {
      double th = 2.0 * M_PI * i / 2000;
      slit[i] = cplx(0.5 * r + 0.5 * r * std::cos(th), 2e-4 * r * std::sin(th));
    }
    auto rep = modulus(circle_polygon(0.0, 1.0, 2048), slit, 384);
    CHECK(rep.estimate == doctest::Approx(grotzsch_modulus(r)).epsilon(0.03));
  }
}

TEST_CASE("annulus preconditions") {
  CHECK_THROWS_AS(modulus(circle_polygon(0.0, 1.0, 64), circle_polygon(0.0, 2.0, 64)), Error);
  CHECK_THROWS_AS(modulus(circle_polygon(0.0, 1.0, 64), circle_polygon(3.0, 0.5, 64)), Error);
}

TEST_CASE("koebe gap trials") {
  auto rep = koebe_gap_check(0.5, 100, 11);
  CHECK(rep.trials == 100);
  CHECK(rep.violations == 0);
  CHECK(rep.worst_ratio > 0);
}

TEST_CASE("blaschke shape trials") {
  for (int d : {2, 3}) {
    auto rep = verify_blaschke_shape(20, d, 0.5, 5);
    CHECK(rep.violations == 0);
    CHECK(rep.worst_ratio < 1.0);
  }
}

TEST_CASE("extremal bound on random configurations") {
  auto cases = extremal_trials(6, 2, 0.02);
  for (const auto& c : cases) {
    CHECK(c.ok);
    CHECK(c.annulus.estimate > 0);
  }
}
