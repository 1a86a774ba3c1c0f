#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "cantor/error.hpp"
#include "puzzle_impl.hpp"

namespace cantor {

namespace {

// Vertices of a that sit inside b further than `slack` from its boundary.
int vertices_inside(const Polygon& a, const Polygon& b, double slack) {
  int count = 0;
  for (cplx z : a)
    if (contains(b, z) && distance_to_boundary(b, z) > slack) ++count;
  return count;
}

// Vertices of a outside b further than `slack` from its boundary.
int vertices_outside(const Polygon& a, const Polygon& b, double slack) {
  int count = 0;
  for (cplx z : a)
    if (!contains(b, z) && distance_to_boundary(b, z) > slack) ++count;
  return count;
}

}  // namespace

PuzzleCheck check_puzzle(Puzzle& pz, int max_depth, int samples, std::uint64_t seed) {
  PuzzleCheck out;
  out.max_depth = max_depth;
  out.samples = samples;
  auto note = [&](std::string s) {
    if (out.failures.size() < 8) out.failures.push_back(std::move(s));
  };
  const Poly& f = pz.map().poly();
  const Poly df = derivative(f);

  std::vector<int> orbits;
  for (int s = 0; s < samples; ++s) orbits.push_back(pz.add_julia_orbit(max_depth + 2, seed + s));

  std::vector<std::set<int>> by_depth(max_depth + 1);
  for (int o : orbits)
    for (int n = 0; n <= max_depth; ++n) by_depth[n].insert(pz.piece_of(o, 0, n));
  for (const auto& ids : by_depth)
    for (int id : ids) pz.geometry(id);
  for (const auto& ids : by_depth) out.pieces += static_cast<int>(ids.size());

  // nesting, once per sample and depth
  for (int o : orbits)
    for (int n = 0; n < max_depth; ++n) {
      int parent = pz.piece_of(o, 0, n), child = pz.piece_of(o, 0, n + 1);
      const PieceGeometry& gp = pz.geometry(parent);
      const PieceGeometry& gc = pz.geometry(child);
      ++out.nesting_tests;
      bool ok = pz.node(child).parent == parent && vertices_outside(gc.boundary, gp.boundary, 2 * gp.h) == 0;
      if (!ok) {
        ++out.nesting_failures;
        note("nesting: " + pz.piece_name(child) + " not inside " + pz.piece_name(parent));
      }
    }

  for (int n = 0; n <= max_depth; ++n) {
    std::vector<int> ids(by_depth[n].begin(), by_depth[n].end());
    for (size_t a = 0; a < ids.size(); ++a)
      for (size_t b = a + 1; b < ids.size(); ++b) {
        const PieceGeometry& ga = pz.geometry(ids[a]);
        const PieceGeometry& gb = pz.geometry(ids[b]);
        ++out.disjoint_tests;
        if (!ga.box.overlaps(gb.box)) continue;
        double slack = 2 * std::max(ga.h, gb.h);
        if (vertices_inside(ga.boundary, gb.boundary, slack) + vertices_inside(gb.boundary, ga.boundary, slack) > 0) {
          ++out.disjoint_failures;
          note("overlap: " + pz.piece_name(ids[a]) + " and " + pz.piece_name(ids[b]));
        }
      }
    if (n == 0) continue;
    for (int id : ids) {
      const PieceNode& node = pz.node(id);
      const PieceGeometry& g = pz.geometry(id);
      const PieceGeometry& gi = pz.geometry(node.image);
      ++out.image_tests;
      int bad = 0;
      for (cplx z : g.boundary) {
        // contour error of the image plus the pushed-forward error of this contour
        double tube = 2 * (gi.h + std::abs(horner(df, z)) * g.h);
        if (distance_to_boundary(gi.boundary, horner(f, z)) > tube) ++bad;
      }
      if (bad > 0) {
        ++out.image_failures;
        note("image law: " + std::to_string(bad) + " boundary points of " + pz.piece_name(id) + " off the tube");
      }
    }
  }

  out.shrinking = true;
  for (int n = 0; n <= max_depth; ++n) {
    double d = 0;
    for (int id : by_depth[n]) d = std::max(d, diameter(pz.geometry(id).boundary));
    out.max_diameter.push_back(d);
    if (n > 0 && !(d < out.max_diameter[n - 1])) {
      out.shrinking = false;
      note("diameter at depth " + std::to_string(n) + " does not shrink");
    }
  }
  return out;
}

}  // namespace cantor
