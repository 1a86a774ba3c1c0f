#include <algorithm>
#include <cmath>

#include "cantor/error.hpp"
#include "cantor/geometry.hpp"

namespace cantor {

double Box::diameter() const { return std::hypot(width(), height()); }

Box bounding_box(const Polygon& p) {
  if (p.empty()) fail(ErrorCode::Degenerate, "empty polygon");
  Box b{p[0].real(), p[0].imag(), p[0].real(), p[0].imag()};
  for (auto z : p) {
    b.x0 = std::min(b.x0, z.real());
    b.x1 = std::max(b.x1, z.real());
    b.y0 = std::min(b.y0, z.imag());
    b.y1 = std::max(b.y1, z.imag());
  }
  return b;
}

double signed_area(const Polygon& p) {
  double a = 0.0;
  for (size_t i = 0, n = p.size(); i < n; ++i) {
    cplx u = p[i], v = p[(i + 1) % n];
    a += u.real() * v.imag() - v.real() * u.imag();
  }
  return 0.5 * a;
}

double perimeter(const Polygon& p) {
  double s = 0.0;
  for (size_t i = 0, n = p.size(); i < n; ++i) s += std::abs(p[(i + 1) % n] - p[i]);
  return s;
}

double diameter(const Polygon& p) {
  double best = 0.0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j) best = std::max(best, std::abs(p[i] - p[j]));
  return best;
}

int winding_number(const Polygon& p, cplx w) {
  int wn = 0;
  for (size_t i = 0, n = p.size(); i < n; ++i) {
    cplx a = p[i] - w, b = p[(i + 1) % n] - w;
    double cross = a.real() * b.imag() - b.real() * a.imag();
    if (a.imag() <= 0) {
      if (b.imag() > 0 && cross > 0) ++wn;
    } else if (b.imag() <= 0 && cross < 0) {
      --wn;
    }
  }
  return wn;
}

bool contains(const Polygon& p, cplx w) { return winding_number(p, w) != 0; }

double distance_to_segment(cplx a, cplx b, cplx w) {
  cplx ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(w - a);
  double t = std::clamp(((w - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(w - (a + t * ab));
}

double distance_to_boundary(const Polygon& p, cplx w) {
  double best = INFINITY;
  for (size_t i = 0, n = p.size(); i < n; ++i)
    best = std::min(best, distance_to_segment(p[i], p[(i + 1) % n], w));
  return best;
}

Polygon circle_polygon(cplx center, double radius, int vertices) {
  Polygon p(vertices);
  for (int k = 0; k < vertices; ++k) p[k] = center + std::polar(radius, 2.0 * M_PI * k / vertices);
  return p;
}

namespace {

void douglas_peucker(const Polygon& p, size_t i, size_t j, double tol, std::vector<char>& keep) {
  if (j <= i + 1) return;
  double worst = -1.0;
  size_t at = i;
  for (size_t k = i + 1; k < j; ++k) {
    double d = distance_to_segment(p[i], p[j % p.size()], p[k]);
    if (d > worst) {
      worst = d;
      at = k;
    }
  }
  if (worst > tol) {
    keep[at] = 1;
    douglas_peucker(p, i, at, tol, keep);
    douglas_peucker(p, at, j, tol, keep);
  }
}

}  // namespace

Polygon simplify(const Polygon& p, double tolerance) {
  size_t n = p.size();
  if (n < 8) return p;
  size_t far = 0;
  for (size_t k = 1; k < n; ++k)
    if (std::abs(p[k] - p[0]) > std::abs(p[far] - p[0])) far = k;
  std::vector<char> keep(n, 0);
  keep[0] = keep[far] = 1;
  douglas_peucker(p, 0, far, tolerance, keep);
  Polygon rotated(p.begin() + far, p.end());
  rotated.insert(rotated.end(), p.begin(), p.begin() + far + 1);
  std::vector<char> keep2(rotated.size(), 0);
  douglas_peucker(rotated, 0, rotated.size() - 1, tolerance, keep2);
  for (size_t k = 0; k < rotated.size(); ++k)
    if (keep2[k]) keep[(k + far) % n] = 1;
  Polygon out;
  for (size_t k = 0; k < n; ++k)
    if (keep[k]) out.push_back(p[k]);
  if (out.size() < 3) return p;
  return out;
}

Polygon resample(const Polygon& p, int vertices) {
  double total = perimeter(p);
  if (total == 0.0 || vertices < 3) fail(ErrorCode::Degenerate, "cannot resample degenerate polygon");
  Polygon out;
  double step = total / vertices, next = 0.0, walked = 0.0;
  for (size_t i = 0, n = p.size(); i < n && static_cast<int>(out.size()) < vertices; ++i) {
    cplx a = p[i], b = p[(i + 1) % n];
    double len = std::abs(b - a);
    while (next <= walked + len && static_cast<int>(out.size()) < vertices) {
      double t = len > 0 ? (next - walked) / len : 0.0;
      out.push_back(a + t * (b - a));
      next += step;
    }
    walked += len;
  }
  return out;
}

double shape(const Polygon& region, cplx w) {
  if (region.size() < 3) fail(ErrorCode::Degenerate, "region needs at least three vertices");
  if (!contains(region, w)) fail(ErrorCode::Domain, "point lies outside the region");
  double dmin = distance_to_boundary(region, w);
  if (dmin <= 0.0) fail(ErrorCode::Domain, "point lies on the boundary");
  double dmax = 0.0;
  for (auto v : region) dmax = std::max(dmax, std::abs(v - w));
  return dmax / dmin;
}

}  // namespace cantor
