#include <algorithm>
#include <cmath>
#include <random>

#include "cantor/error.hpp"
#include "puzzle_impl.hpp"

namespace cantor {

double green(const Poly& f, cplx z, int max_iter) {
  int d = degree(f);
  double log_lead = std::log(std::abs(f[d])) / (d - 1);
  double scale_d = 1.0;
  for (int k = 0; k < max_iter; ++k) {
    double a = std::abs(z);
    if (a > 1e30) return (std::log(a) + log_lead) * scale_d;
    z = horner(f, z);
    scale_d /= d;
  }
  return 0.0;
}

namespace {

double big_green(const std::vector<BigComplex>& coeffs, const Poly& f, BigComplex z, int cap) {
  int d = degree(f);
  double scale_d = 1.0;
  BigFloat big(1e10);
  BigFloat big2 = big * big;
  for (int k = 0; k < cap; ++k) {
    if (norm(z) > big2) return green(f, z.to_cplx(), 400) * scale_d;
    z = horner(coeffs, z);
    scale_d /= d;
  }
  return 0.0;
}

}  // namespace

Puzzle::~Puzzle() = default;

Puzzle::Puzzle(const RationalMap& map, PuzzleOptions options)
    : map_(map), options_(options), impl_(std::make_unique<Impl>()) {
  auto cert = basin_certificate(map);
  if (cert.conjugated || !map.is_polynomial())
    fail(ErrorCode::Unsupported, "puzzles are built for polynomials only");
  impl_->poly = map.poly();
  const Poly& f = impl_->poly;
  const int d = map.degree();

  unsigned coeff_bits = std::max(128u, bits_for_digits(map.coefficient_digits()) + 64u);
  {
    PrecisionGuard guard(coeff_bits);
    auto coeffs = map.big_coefficients();
    for (const auto& c : critical_points(map)) {
      if (c.point.infinite) continue;
      CriticalInfo info;
      info.point = c;
      info.green_value = big_green(coeffs, f, big_critical_point(map, c), 2000);
      critical_.push_back(info);
    }
  }
  std::sort(critical_.begin(), critical_.end(), [](const CriticalInfo& a, const CriticalInfo& b) {
    return a.point.point.z.real() != b.point.point.z.real() ? a.point.point.z.real() < b.point.point.z.real()
                                                              : a.point.point.z.imag() < b.point.point.z.imag();
  });

  double radius = escape_radius(map);
  g0_ = INFINITY;
  for (int k = 0; k < 64; ++k) g0_ = std::min(g0_, green(f, std::polar(radius, 2.0 * M_PI * k / 64)));
  // Escape slower than any admissible level is indistinguishable from no escape.
  const double bounded_below = g0_ / std::pow(static_cast<double>(d), options_.max_n0 + 1);
  for (auto& c : critical_)
    if (c.green_value < bounded_below) c.green_value = 0;
  double min_escaping = INFINITY;
  for (const auto& c : critical_)
    if (c.green_value > 0) min_escaping = std::min(min_escaping, c.green_value);
  if (!std::isfinite(min_escaping))
    fail(ErrorCode::Precondition, "no critical point escapes: the Julia set is connected");

  int n0 = 1;
  if (options_.n0) n0 = *options_.n0;
  else
    while (g0_ / std::pow(d, n0) >= min_escaping / std::sqrt(static_cast<double>(d))) ++n0;

  for (;; ++n0) {
    if (n0 > options_.max_n0) fail(ErrorCode::Cap, "no admissible N0 up to the cap");
    n0_ = n0;
    double lv = level(0);
    Box box{-radius, -radius, radius, radius};
    auto gfun = [&](cplx z) { return green(f, z); };
    VertexGrid coarse = VertexGrid::sample(box, 256, gfun);
    int count = 0;
    auto lab = label_below(coarse, lv, count);
    if (count == 0) fail(ErrorCode::Degenerate, "no depth-0 pieces at this level");
    Box inner{INFINITY, INFINITY, -INFINITY, -INFINITY};
    for (int c = 0; c < count; ++c) {
      Box b = component_box(coarse, lab, c);
      inner.x0 = std::min(inner.x0, b.x0);
      inner.y0 = std::min(inner.y0, b.y0);
      inner.x1 = std::max(inner.x1, b.x1);
      inner.y1 = std::max(inner.y1, b.y1);
    }
    double pad = 3.0 * coarse.h;
    inner = {inner.x0 - pad, inner.y0 - pad, inner.x1 + pad, inner.y1 + pad};
    depth0_ = VertexGrid::sample(inner, options_.grid_cells, gfun);
    depth0_labels_ = label_below(depth0_, lv, count);
    // Canonical order: by centroid, real part first.
    std::vector<cplx> centroid(count, 0.0);
    std::vector<int> npts(count, 0), seed_idx(count, -1);
    for (size_t s = 0; s < depth0_labels_.size(); ++s) {
      int l = depth0_labels_[s];
      if (l < 0) continue;
      centroid[l] += depth0_.point(static_cast<int>(s % depth0_.nx), static_cast<int>(s / depth0_.nx));
      ++npts[l];
      if (seed_idx[l] < 0 || depth0_.value[s] < depth0_.value[seed_idx[l]]) seed_idx[l] = static_cast<int>(s);
    }
    std::vector<int> order(count);
    for (int c = 0; c < count; ++c) {
      order[c] = c;
      centroid[c] /= std::max(1, npts[c]);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return centroid[a].real() != centroid[b].real() ? centroid[a].real() < centroid[b].real()
                                                      : centroid[a].imag() < centroid[b].imag();
    });
    std::vector<int> rank(count);
    for (int k = 0; k < count; ++k) rank[order[k]] = k;
    for (auto& l : depth0_labels_)
      if (l >= 0) l = rank[l];
    depth0_count_ = count;
    impl_->depth0_seed.assign(count, 0.0);
    for (int c = 0; c < count; ++c)
      impl_->depth0_seed[rank[c]] = depth0_.point(seed_idx[c] % depth0_.nx, seed_idx[c] / depth0_.nx);

    std::vector<int> per_piece(count, 0);
    bool ok = true;
    for (auto& c : critical_) {
      c.piece = -1;
      if (c.green_value > 0 && c.green_value > lv) continue;
      c.piece = locate0(c.point.point.z);
      if (c.piece < 0) ok = false;
      else if (++per_piece[c.piece] > 1) ok = false;
    }
    if (ok) break;
    if (options_.n0) fail(ErrorCode::Precondition, "depth-0 pieces do not separate the critical points");
  }

  julia_critical_.clear();
  std::vector<int> label_critical(depth0_count_, -1);
  for (size_t i = 0; i < critical_.size(); ++i)
    if (critical_[i].piece >= 0) {
      label_critical[critical_[i].piece] = static_cast<int>(julia_critical_.size());
      julia_critical_.push_back(static_cast<int>(i));
      impl_->local_degree.push_back(critical_[i].point.local_degree);
    }

  max_derivative_ = 2.0;
  Poly df = derivative(f);
  for (size_t s = 0; s < depth0_labels_.size(); ++s)
    if (depth0_labels_[s] >= 0) {
      cplx z = depth0_.point(static_cast<int>(s % depth0_.nx), static_cast<int>(s / depth0_.nx));
      max_derivative_ = std::max(max_derivative_, std::abs(horner(df, z)));
    }

  impl_->engine.setup(depth0_count_, label_critical, impl_->local_degree);
  impl_->points.assign(julia_critical_.size(), {});
  impl_->approx.assign(julia_critical_.size(), {});
  bits_ = bits_for_length(64);
  ensure_critical_length(64);
}

double Puzzle::level(int depth) const {
  if (depth < 0) fail(ErrorCode::Domain, "negative depth");
  return g0_ / std::pow(static_cast<double>(degree()), n0_ + depth);
}

int Puzzle::locate0(cplx z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return -1;
  double fi = (z.real() - depth0_.x0) / depth0_.h, fj = (z.imag() - depth0_.y0) / depth0_.h;
  if (fi < -3 || fj < -3 || fi > depth0_.nx + 2 || fj > depth0_.ny + 2) return -1;
  int i = static_cast<int>(std::lround(fi)), j = static_cast<int>(std::lround(fj));
  int found = -1;
  bool mixed = false;
  for (int dj = -2; dj <= 2; ++dj)
    for (int di = -2; di <= 2; ++di) {
      int l = depth0_label_at(i + di, j + dj);
      if (l < 0 || (found >= 0 && found != l)) mixed = true;
      else found = l;
    }
  if (found >= 0 && !mixed) return found;
  if (green(impl_->poly, z) >= level(0)) return -1;
  return locate0_fine(z);
}

int Puzzle::depth0_label_at(int i, int j) const {
  if (i < 0 || j < 0 || i >= depth0_.nx || j >= depth0_.ny) return -1;
  return depth0_labels_[static_cast<size_t>(j) * depth0_.nx + i];
}

// Near a piece boundary: follow the sublevel component of z on a finer local
// grid until it meets vertices of the depth-0 grid.
int Puzzle::locate0_fine(cplx z) const {
  const Poly& f = impl_->poly;
  const double lv = level(0);
  int ci, cj;
  depth0_.locate(z, ci, cj);
  for (int span = 4; span <= 16; span *= 2) {
    // aligned with the depth-0 lattice, four sub-cells per cell
    cplx lo = depth0_.point(ci - span, cj - span), hi = depth0_.point(ci + span, cj + span);
    VertexGrid g = VertexGrid::sample({lo.real(), lo.imag(), hi.real(), hi.imag()}, span * 8,
                                      [&](cplx w) { return green(f, w); });
    int count = 0;
    auto lab = label_below(g, lv, count);
    int gi, gj;
    g.locate(z, gi, gj);
    int mine = lab[static_cast<size_t>(gj) * g.nx + gi];
    if (mine < 0) return -2;
    int found = -1;
    bool border = false;
    for (int jj = 0; jj < g.ny; ++jj)
      for (int ii = 0; ii < g.nx; ++ii) {
        if (lab[static_cast<size_t>(jj) * g.nx + ii] != mine) continue;
        if (ii == 0 || jj == 0 || ii == g.nx - 1 || jj == g.ny - 1) border = true;
        if (ii % 4 || jj % 4) continue;
        int l = depth0_label_at(ci - span + ii / 4, cj - span + jj / 4);
        if (l < 0) continue;
        if (found >= 0 && found != l) return -2;
        found = l;
      }
    if (found >= 0) return found;
    if (!border) return -2;
  }
  return -2;
}

unsigned Puzzle::bits_for_length(int length) const {
  double per_step = std::log2(std::max(2.0, max_derivative_));
  return 96u + static_cast<unsigned>(std::ceil(per_step * std::max(0, length)));
}

}  // namespace cantor
