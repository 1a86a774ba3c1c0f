#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cantor/numeric.hpp"

namespace cantor {

// Closed polygon; the last vertex connects back to the first.
using Polygon = std::vector<cplx>;

struct Box {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double diameter() const;
  bool overlaps(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

Box bounding_box(const Polygon& p);
double signed_area(const Polygon& p);
double perimeter(const Polygon& p);
double diameter(const Polygon& p);
int winding_number(const Polygon& p, cplx w);
bool contains(const Polygon& p, cplx w);
double distance_to_boundary(const Polygon& p, cplx w);
double distance_to_segment(cplx a, cplx b, cplx w);
Polygon circle_polygon(cplx center, double radius, int vertices);
Polygon simplify(const Polygon& p, double tolerance);
Polygon resample(const Polygon& p, int vertices);

// max/min distance from w to the boundary; w must lie inside.
double shape(const Polygon& region, cplx w);

struct AnnulusReport {
  double primal = 0;       // 1 / Dirichlet energy of the potential
  double dual = 0;         // energy of the conjugate with unit period
  double estimate = 0;
  double error_bound = 0;
  cplx center{0, 0};
  int theta_cells = 0;
  int radial_cells = 0;
};

// Modulus (1/2pi) log R convention of the annulus between two nested Jordan
// polygons, from a log-polar finite-difference solve around a point of the inner region.
AnnulusReport modulus(const Polygon& outer, const Polygon& inner, int theta_cells = 512,
                      std::optional<cplx> center = std::nullopt);

// Exact modulus of the unit disk slit along [0, r].
double grotzsch_modulus(double r);
// Inverse of grotzsch_modulus.
double grotzsch_radius(double m);

struct GapConstants {
  double m = 0;
  double r0 = 0;
  double c = 0;
};

GapConstants gap_constant(double m);

struct ShapeConstants {
  double m = 0;
  int d = 0;
  double c0 = 0;
  double c1 = 0;
  double c2 = 0;
  double k = 0;
  GapConstants inner;  // constants at modulus m/d
};

ShapeConstants shape_constant(double m, int d);

struct TrialReport {
  int trials = 0;
  int violations = 0;
  double worst_ratio = 0;    // largest lhs/rhs seen; below 1 means the bound held
  double bound = 0;
};

// Compares d(w, bd U) with c(m) diam(U~) for univalent images of round pairs.
TrialReport koebe_gap_check(double m, int trials, std::uint64_t seed);

// Compares Shape(U, 0) with K Shape(V, 0)^(1/d) for random Blaschke products.
TrialReport verify_blaschke_shape(int trials, int d, double m, std::uint64_t seed);

struct ExtremalCase {
  double r = 0;
  Polygon outer;
  Polygon inner;     // contains 0 and r
  AnnulusReport annulus;
  double slit_modulus = 0;
  bool ok = false;
};

ExtremalCase extremal_bound_check(const Polygon& outer, const Polygon& inner, double r,
                                  double tolerance, int theta_cells = 384);

// Random admissible configurations: inner sets around [0, r] inside the unit disk.
std::vector<ExtremalCase> extremal_trials(int count, std::uint64_t seed, double tolerance,
                                           int theta_cells = 384);

}  // namespace cantor
