#include <algorithm>
#include <cmath>
#include <random>

#include "cantor/error.hpp"
#include "cantor/geometry.hpp"
#include "cantor/polynomial.hpp"

namespace cantor {

namespace {

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

double grotzsch_modulus(double r) {
  if (!(r > 0.0 && r < 1.0)) fail(ErrorCode::Domain, "slit length must lie in (0, 1)");
  double rp = std::sqrt((1.0 - r) * (1.0 + r));
  // (1/2pi) * (pi/2) K'(r)/K(r), with K(k) = pi / (2 agm(1, sqrt(1-k^2)))
  return agm(1.0, rp) / (4.0 * agm(1.0, r));
}

double grotzsch_radius(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) fail(ErrorCode::Domain, "modulus must be positive and finite");
  double lo = -745.0, hi = 0.0;  // log r
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double r = std::exp(mid);
    if (r >= 1.0) { hi = mid; continue; }
    if (r <= 0.0 || grotzsch_modulus(r) > m) lo = mid;
    else hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

GapConstants gap_constant(double m) {
  GapConstants k;
  k.m = m;
  k.r0 = grotzsch_radius(m);
  k.c = (1.0 - k.r0) * (1.0 - k.r0) / (8.0 * k.r0);
  return k;
}

ShapeConstants shape_constant(double m, int d) {
  if (d < 1) fail(ErrorCode::Domain, "degree must be positive");
  ShapeConstants k;
  k.m = m;
  k.d = d;
  k.inner = gap_constant(m / d);
  k.c0 = 1.0 / k.inner.r0;
  k.c1 = (k.c0 - 1.0) / (2.0 * k.c0);
  k.c2 = (k.inner.c + 1.0) / (k.inner.c * (1.0 - k.inner.r0));
  k.k = k.c2 / k.c1;
  return k;
}

TrialReport koebe_gap_check(double m, int trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::Domain, "need at least one trial");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GapConstants k = gap_constant(m);
  TrialReport rep;
  rep.bound = k.c;
  const double rho_max = std::exp(-2.0 * M_PI * m);
  for (int t = 0; t < trials; ++t) {
    // h(z) = z + sum a_k z^k with sum k|a_k| < 1 is univalent on the disk.
    Poly h{0.0, 1.0};
    double rho = rho_max;
    if (t > 0) {
      int deg = 2 + static_cast<int>(unit(rng) * 4);
      double budget = 0.95 * unit(rng);
      std::vector<double> w(deg - 1);
      double sw = 0;
      for (auto& x : w) sw += (x = unit(rng) + 1e-3);
      for (int j = 2; j <= deg; ++j)
        h.push_back(std::polar(budget * w[j - 2] / sw / j, 2.0 * M_PI * unit(rng)));
      rho = rho_max * (0.3 + 0.7 * unit(rng));
    }
    Polygon outer(2048), inner(512);
    for (int i = 0; i < 2048; ++i) outer[i] = horner(h, std::polar(1.0, 2.0 * M_PI * i / 2048));
    for (int i = 0; i < 512; ++i) inner[i] = horner(h, std::polar(rho, 2.0 * M_PI * i / 512));
    double diam = diameter(inner);
    double worst = 0.0;
    for (double s : {0.0, 0.5, 1.0})
      for (int i = 0; i < 64; ++i) {
        cplx w = horner(h, std::polar(s * rho, 2.0 * M_PI * i / 64));
        double ratio = k.c * diam / distance_to_boundary(outer, w);
        worst = std::max(worst, ratio);
      }
    rep.worst_ratio = std::max(rep.worst_ratio, worst);
    if (worst > 1.0 + 1e-9) ++rep.violations;
    ++rep.trials;
  }
  return rep;
}

namespace {

struct Blaschke {
  std::vector<cplx> zeros;
  cplx rotation{1.0, 0.0};

  cplx operator()(cplx z) const {
    cplx v = rotation;
    for (auto a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
  }
  // Critical points inside the unit disk.
  std::vector<cplx> critical_points() const {
    Poly total;
    for (size_t j = 0; j < zeros.size(); ++j) {
      Poly term{1.0 - std::norm(zeros[j])};
      for (size_t k = 0; k < zeros.size(); ++k) {
        if (k == j) continue;
        term = multiply(term, Poly{-zeros[k], 1.0});
        term = multiply(term, Poly{1.0, -std::conj(zeros[k])});
      }
      total = total.empty() ? term : subtract(total, scale(term, -1.0));
    }
    std::vector<cplx> out;
    if (degree(total) <= 0) return out;
    for (auto z : simple_roots(total))
      if (std::abs(z) < 1.0) out.push_back(z);
    return out;
  }
  // Solutions of g(z) = w inside the disk.
  std::vector<cplx> preimages(cplx w) const {
    Poly num{1.0}, den{1.0};
    for (auto a : zeros) {
      num = multiply(num, Poly{-a, 1.0});
      den = multiply(den, Poly{1.0, -std::conj(a)});
    }
    Poly eq = subtract(num, scale(den, w / rotation));
    std::vector<cplx> out;
    for (auto z : simple_roots(eq))
      if (std::abs(z) < 1.0) out.push_back(z);
    return out;
  }
};

}  // namespace

TrialReport verify_blaschke_shape(int trials, int d, double m, std::uint64_t seed) {
  if (trials < 1 || d < 1 || !(m > 0)) fail(ErrorCode::Domain, "bad trial parameters");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ShapeConstants k = shape_constant(m, d);
  TrialReport rep;
  rep.bound = k.k;
  const double spread = std::exp(2.0 * M_PI * m);
  for (int t = 0; t < trials; ++t) {
    double s = 0.9 / spread * (0.2 + 0.8 * unit(rng));
    Blaschke g;
    g.rotation = std::polar(1.0, 2.0 * M_PI * unit(rng));
    double delta = 0.5;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 200) fail(ErrorCode::Numeric, "could not sample an admissible Blaschke product");
      g.zeros.clear();
      for (int j = 0; j < d; ++j) g.zeros.push_back(std::polar(delta * std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng)));
      bool ok = std::abs(g(0.0)) < s;
      for (auto c : g.critical_points()) ok = ok && std::abs(g(c)) < s;
      if (ok) break;
      delta *= 0.8;
    }
    // V: star-shaped about 0 containing the disk of radius s*spread.
    double rmin = 1.01 * s * spread, rmax = rmin + (0.97 - rmin) * (0.1 + 0.9 * unit(rng));
    int modes = 1 + static_cast<int>(unit(rng) * 5);
    std::vector<double> amp(modes), phase(modes);
    for (int j = 0; j < modes; ++j) {
      amp[j] = unit(rng);
      phase[j] = 2.0 * M_PI * unit(rng);
    }
    const int nv = 2048;
    std::vector<double> raw(nv);
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i < nv; ++i) {
      double th = 2.0 * M_PI * i / nv, v = 0;
      for (int j = 0; j < modes; ++j) v += amp[j] * std::cos((j + 1) * th + phase[j]);
      raw[i] = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    Polygon vpoly(nv);
    for (int i = 0; i < nv; ++i) {
      double frac = hi > lo ? (raw[i] - lo) / (hi - lo) : 0.5;
      vpoly[i] = std::polar(rmin + (rmax - rmin) * frac, 2.0 * M_PI * i / nv);
    }
    double shape_v = shape(vpoly, 0.0);
    double umax = 0.0, umin = INFINITY;
    for (int i = 0; i < nv; ++i) {
      cplx a = vpoly[i], b = vpoly[(i + 1) % nv];
      for (int sub = 0; sub < 2; ++sub)
        for (auto z : g.preimages(a + 0.5 * sub * (b - a))) {
          umax = std::max(umax, std::abs(z));
          umin = std::min(umin, std::abs(z));
        }
    }
    double shape_u = umax / umin;
    double ratio = shape_u / (k.k * std::pow(shape_v, 1.0 / d));
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    if (ratio > 1.0) ++rep.violations;
    ++rep.trials;
  }
  return rep;
}

ExtremalCase extremal_bound_check(const Polygon& outer, const Polygon& inner, double r,
                                  double tolerance, int theta_cells) {
  if (!(r > 0 && r < 1)) fail(ErrorCode::Domain, "r must lie in (0, 1)");
  if (!contains(inner, 0.0) || !contains(inner, r))
    fail(ErrorCode::Domain, "inner set must contain 0 and r");
  for (auto v : outer)
    if (std::abs(v) > 1.0 + 1e-12) fail(ErrorCode::Domain, "annulus must lie in the unit disk");
  ExtremalCase c;
  c.r = r;
  c.outer = outer;
  c.inner = inner;
  c.annulus = modulus(outer, inner, theta_cells);
  c.slit_modulus = grotzsch_modulus(r);
  c.ok = c.annulus.estimate <= c.slit_modulus * (1.0 + tolerance) + c.annulus.error_bound;
  return c;
}

std::vector<ExtremalCase> extremal_trials(int count, std::uint64_t seed, double tolerance,
                                           int theta_cells) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ExtremalCase> out;
  const int nv = 512;
  for (int t = 0; t < count; ++t) {
    double r = 0.05 + 0.75 * unit(rng);
    cplx mid = 0.5 * r;
    double a = 0.5 * r * (1.05 + 0.4 * unit(rng));
    double b = a * (0.15 + 0.85 * unit(rng));
    double bump = 0.15 * unit(rng);
    int freq = 2 + static_cast<int>(unit(rng) * 4);
    double phase = 2.0 * M_PI * unit(rng);
    Polygon inner(nv);
    double reach = 0.0;
    for (int i = 0; i < nv; ++i) {
      double th = 2.0 * M_PI * i / nv;
      double wobble = 1.0 + bump * std::sin(freq * th + phase) * std::sin(th) * std::sin(th);
      inner[i] = mid + cplx(a * std::cos(th), b * std::sin(th) * wobble);
      reach = std::max(reach, std::abs(inner[i]));
    }
    double rout = reach + (1.0 - reach) * (0.2 + 0.8 * unit(rng));
    double squash = 0.1 * unit(rng);
    Polygon outer(nv);
    for (int i = 0; i < nv; ++i) {
      double th = 2.0 * M_PI * i / nv;
      double rr = rout * (1.0 - squash * (0.5 + 0.5 * std::cos(2.0 * th)));
      rr = std::max(rr, reach + 0.5 * (rout - reach));
      outer[i] = std::polar(rr, th);
    }
    out.push_back(extremal_bound_check(outer, inner, r, tolerance, theta_cells));
  }
  return out;
}

}  // namespace cantor
