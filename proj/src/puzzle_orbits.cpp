#include <algorithm>
#include <cmath>
#include <random>

#include "cantor/error.hpp"
#include "puzzle_impl.hpp"

namespace cantor {

namespace {

BigFloat tolerance_for(unsigned bits) {
  return boost::multiprecision::pow(BigFloat(2), -static_cast<int>(bits) + 12);
}

std::vector<BigComplex> derivative_of(const std::vector<BigComplex>& c) {
  std::vector<BigComplex> out;
  for (size_t i = 1; i < c.size(); ++i) out.push_back(c[i] * BigComplex(BigFloat(static_cast<int>(i)), BigFloat(0)));
  return out;
}


}  // namespace

// Same component of f^{-1}(Q) inside the critical piece, for a and b near the
// Julia critical point c, compared through the local coordinate (z-c) g(z)^(1/m).
bool PuzzleEngine::same_branch(int oa, int ta, int ob, int tb, int c) const {
  const BigComplex& cp = impl_.julia_points[c];
  const int m = impl_.local_degree[c];
  BigComplex da = impl_.points[oa][ta] - cp, db = impl_.points[ob][tb] - cp;
  if (norm(da) == 0 || norm(db) == 0) return true;
  cplx ratio = (db / da).to_cplx();
  const auto& t = impl_.taylor[c];
  auto g = [&](cplx delta) {
    cplx acc = 0.0;
    for (int i = static_cast<int>(t.size()) - 1; i >= m; --i) acc = acc * delta + t[i];
    return acc;
  };
  cplx rho = ratio * std::pow(g(db.to_cplx()) / g(da.to_cplx()), 1.0 / m);
  return std::abs(std::arg(rho)) < M_PI / m;
}

namespace {

std::vector<int> labels_of(const Puzzle& pz, const std::vector<cplx>& approx) {
  std::vector<int> out;
  for (const auto& z : approx) out.push_back(pz.locate0(z));
  return out;
}

std::vector<cplx> approx_of(const std::vector<BigComplex>& pts) {
  std::vector<cplx> out;
  for (const auto& p : pts) out.push_back(p.to_cplx());
  return out;
}

}  // namespace

void Puzzle::ensure_critical_length(int length) {
  if (impl_->critical_length >= length) return;
  int target = std::max(length, impl_->critical_length * 2);
  bits_ = std::max(bits_, bits_for_length(target));
  PrecisionGuard guard(bits_);
  auto coeffs = map_.big_coefficients();
  const int k = static_cast<int>(julia_critical_.size());
  impl_->julia_points.clear();
  impl_->taylor.clear();
  for (int c = 0; c < k; ++c) {
    const auto& info = critical_[julia_critical_[c]];
    BigComplex cp = big_critical_point(map_, info.point);
    impl_->julia_points.push_back(cp);
    std::vector<cplx> t;
    for (const auto& v : big_taylor(coeffs, cp)) t.push_back(v.to_cplx());
    impl_->taylor.push_back(t);
  }
  for (int c = 0; c < k; ++c) {
    std::vector<BigComplex> pts{impl_->julia_points[c]};
    for (int i = 1; i < target; ++i) pts.push_back(horner(coeffs, pts.back()));
    impl_->points[c] = std::move(pts);
    impl_->approx[c] = approx_of(impl_->points[c]);
  }
  impl_->critical_length = target;
  for (int c = 0; c < k; ++c) impl_->engine.set_critical_labels(c, labels_of(*this, impl_->approx[c]));
}

int Puzzle::add_forward_orbit(const BigComplex& z, int length) {
  if (length < 1) fail(ErrorCode::Domain, "orbit length must be positive");
  ensure_critical_length(length + 2);
  PrecisionGuard guard(bits_);
  auto coeffs = map_.big_coefficients();
  std::vector<BigComplex> pts{BigComplex(z.re, z.im)};
  for (int i = 1; i < length; ++i) pts.push_back(horner(coeffs, pts.back()));
  return register_orbit(std::move(pts));
}

int Puzzle::add_julia_orbit(int length, std::uint64_t seed) {
  if (length < 1) fail(ErrorCode::Domain, "orbit length must be positive");
  ensure_critical_length(length + 2);
  PrecisionGuard guard(bits_);
  auto coeffs = map_.big_coefficients();
  auto dcoeffs = derivative_of(coeffs);
  std::mt19937_64 rng(seed);
  // Start from an interior vertex of a random depth-0 piece.
  cplx w0 = 0.0;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 100000) fail(ErrorCode::Numeric, "could not find an interior starting point");
    size_t s = rng() % depth0_labels_.size();
    int l = depth0_labels_[s];
    if (l < 0) continue;
    cplx z = depth0_.point(static_cast<int>(s % depth0_.nx), static_cast<int>(s / depth0_.nx));
    if (locate0(z) == l) {
      w0 = z;
      break;
    }
  }
  const Poly& f = impl_->poly;
  BigFloat tol = tolerance_for(bits_);
  std::vector<BigComplex> chain{BigComplex(w0)};
  for (int i = 1; i < length; ++i) {
    const BigComplex& w = chain.back();
    Poly shifted = f;
    shifted[0] -= w.to_cplx();
    auto r = simple_roots(shifted);
    BigComplex z(r[rng() % r.size()]);
    std::vector<BigComplex> target = coeffs;
    target[0] = target[0] - w;
    for (int it = 0; it < 200; ++it) {
      BigComplex step = horner(target, z) / horner(dcoeffs, z);
      z = z - step;
      if (abs(step) <= tol * (BigFloat(1) + abs(z))) break;
    }
    chain.push_back(z);
  }
  std::reverse(chain.begin(), chain.end());
  return register_orbit(std::move(chain));
}

int Puzzle::register_orbit(std::vector<BigComplex> pts) {
  impl_->approx.push_back(approx_of(pts));
  impl_->points.push_back(std::move(pts));
  return impl_->engine.add_orbit_labels(labels_of(*this, impl_->approx.back()));
}

int Puzzle::orbit_count() const { return impl_->engine.orbit_count(); }

int Puzzle::orbit_length(int orbit) const { return impl_->engine.orbit_length(orbit); }

const BigComplex& Puzzle::orbit_point(int orbit, int time) const {
  if (time < 0 || time >= orbit_length(orbit)) fail(ErrorCode::Domain, "orbit time out of range");
  return impl_->points[orbit][time];
}

cplx Puzzle::orbit_approx(int orbit, int time) const {
  if (time < 0 || time >= orbit_length(orbit)) fail(ErrorCode::Domain, "orbit time out of range");
  return impl_->approx[orbit][time];
}

int Puzzle::orbit_label(int orbit, int time) const { return impl_->engine.label(orbit, time); }

int Puzzle::orbit_clean_length(int orbit) const { return impl_->engine.clean_length(orbit); }

int Puzzle::agreement(int orbit_a, int time_a, int orbit_b, int time_b) const {
  PrecisionGuard guard(bits_);
  return impl_->engine.agreement(orbit_a, time_a, orbit_b, time_b);
}

int Puzzle::critical_agreement(int orbit, int time, int julia_index, int q) const {
  return impl_->engine.critical_agreement(orbit, time, julia_index, q);
}

PieceEngine& Puzzle::engine() { return impl_->engine; }
const PieceEngine& Puzzle::engine() const { return impl_->engine; }

}  // namespace cantor
