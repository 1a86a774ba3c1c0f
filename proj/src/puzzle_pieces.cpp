#include <algorithm>
#include <cmath>
#include <functional>

#include "cantor/error.hpp"
#include "puzzle_impl.hpp"

namespace cantor {

int Puzzle::piece_of(int orbit, int time, int depth) {
  PrecisionGuard guard(bits_);
  return impl_->engine.piece_of(orbit, time, depth);
}

const PieceNode& Puzzle::node(int id) const { return impl_->engine.node(id); }

int Puzzle::node_count() const { return impl_->engine.node_count(); }

std::string Puzzle::piece_name(int id) const { return impl_->engine.piece_name(id); }

std::string Puzzle::piece_code(int id) const { return impl_->engine.piece_code(id); }

bool Puzzle::has_geometry(int node_id) const { return impl_->geometry.count(node_id) > 0; }

namespace {

Box grow(const Box& b, double margin) {
  return {b.x0 - margin, b.y0 - margin, b.x1 + margin, b.y1 + margin};
}

// Label of the component holding z: a nearby vertex joined to z by a
// segment that stays below the level.
int component_at(const VertexGrid& g, const std::vector<int>& labels, cplx z,
                 const std::function<double(cplx)>& G, double level) {
  int i, j;
  g.locate(z, i, j);
  int best = -1;
  double best_d = INFINITY;
  for (int dj = -1; dj <= 2; ++dj)
    for (int di = -1; di <= 2; ++di) {
      int ii = i + di, jj = j + dj;
      if (ii < 0 || jj < 0 || ii >= g.nx || jj >= g.ny) continue;
      int l = labels[static_cast<size_t>(jj) * g.nx + ii];
      cplx v = g.point(ii, jj);
      double dist = std::abs(v - z);
      if (l < 0 || dist >= best_d) continue;
      bool joined = true;
      for (int k = 1; k < 8 && joined; ++k) joined = G(z + (v - z) * (k / 8.0)) < level;
      if (!joined) continue;
      best = l;
      best_d = dist;
    }
  return best;
}

bool touches_border(const VertexGrid& g, const std::vector<int>& labels, int label) {
  for (int i = 0; i < g.nx; ++i)
    if (labels[i] == label || labels[static_cast<size_t>(g.ny - 1) * g.nx + i] == label) return true;
  for (int j = 0; j < g.ny; ++j)
    if (labels[static_cast<size_t>(j) * g.nx] == label || labels[static_cast<size_t>(j) * g.nx + g.nx - 1] == label)
      return true;
  return false;
}

}  // namespace

const PieceGeometry& Puzzle::geometry(int node_id) {
  auto found = impl_->geometry.find(node_id);
  if (found != impl_->geometry.end()) return found->second;
  const PieceNode& n = node(node_id);
  const double lv = level(n.depth);
  const Poly& f = impl_->poly;
  auto G = [&](cplx z) { return green(f, z); };

  cplx rep;
  Box search;
  if (n.depth == 0) {
    rep = impl_->depth0_seed[n.index];
    search = component_box(depth0_, depth0_labels_, n.index);
    search = grow(search, 2 * depth0_.h);
  } else {
    rep = orbit_approx(n.rep_orbit, n.rep_time);
    search = geometry(n.parent).box;
    // f is close to affine on a non-critical piece: start from the scaled image size
    double df = std::abs(horner(derivative(f), rep));
    double guess = 3 * geometry(n.image).box.diameter() / std::max(df, 1e-300);
    if (guess < search.diameter() / 4) search = {rep.real() - guess, rep.imag() - guess, rep.real() + guess, rep.imag() + guess};
  }

  const int cells = options_.piece_cells;
  for (int attempt = 0; attempt < 6; ++attempt) {
    VertexGrid coarse = VertexGrid::sample(search, cells << std::min(attempt, 3), G);
    int count = 0;
    auto lab = label_below(coarse, lv, count);
    int l = component_at(coarse, lab, rep, G, lv);
    if (l < 0) continue;
    if (n.depth > 0 && attempt < 3 && touches_border(coarse, lab, l)) {
      search = grow(search, search.width());
      continue;
    }
    Box box = grow(component_box(coarse, lab, l), 1.5 * coarse.h);
    for (int refine = 0; refine < 4; ++refine) {
      double pad = 0.15 * std::max(box.width(), box.height());
      VertexGrid fine = VertexGrid::sample(grow(box, pad), cells, G);
      int fc = 0;
      auto flab = label_below(fine, lv, fc);
      int fl = component_at(fine, flab, rep, G, lv);
      if (fl < 0) break;
      if (touches_border(fine, flab, fl)) {
        box = grow(box, pad * 2);
        continue;
      }
      PieceGeometry geom;
      geom.boundary = component_contour(fine, flab, fl, lv);
      geom.box = grow(component_box(fine, flab, fl), fine.h);
      geom.h = fine.h;
      // features thinner than the grid may leave rep just outside
      if (geom.boundary.size() < 3) break;
      if (!contains(geom.boundary, rep) && distance_to_boundary(geom.boundary, rep) > 2 * fine.h) break;
      return impl_->geometry.emplace(node_id, std::move(geom)).first->second;
    }
  }
  fail(ErrorCode::Ambiguous, "could not resolve the boundary of " + piece_name(node_id));
}

}  // namespace cantor
