#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <queue>

#include "cantor/error.hpp"
#include "cantor/geometry.hpp"

namespace cantor {

namespace {

enum Cell : std::uint8_t { kFree = 0, kZero = 1, kOne = 2, kDropped = 3 };

// Radii at which the ray w + t e^{i theta}, t > 0, crosses the polygon.
void ray_crossings(const Polygon& p, cplx w, double theta, std::vector<double>& out) {
  out.clear();
  cplx dir = std::polar(1.0, theta);
  for (size_t i = 0, n = p.size(); i < n; ++i) {
    cplx a = (p[i] - w) * std::conj(dir), b = (p[(i + 1) % n] - w) * std::conj(dir);
    // Rotated frame: the ray is the positive real axis.
    if ((a.imag() > 0) == (b.imag() > 0)) continue;
    double t = a.imag() / (a.imag() - b.imag());
    double x = a.real() + t * (b.real() - a.real());
    if (x > 0) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
}

cplx default_center(const Polygon& inner) {
  Box b = bounding_box(inner);
  cplx best = 0.0;
  double best_d = -1.0;
  const int n = 48;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      cplx z(b.x0 + b.width() * i / n, b.y0 + b.height() * j / n);
      if (!contains(inner, z)) continue;
      double d = distance_to_boundary(inner, z);
      if (d > best_d) {
        best_d = d;
        best = z;
      }
    }
  if (best_d <= 0) fail(ErrorCode::Degenerate, "inner region has no interior sample point");
  return best;
}

}  // namespace

AnnulusReport modulus(const Polygon& outer, const Polygon& inner, int theta_cells,
                      std::optional<cplx> center) {
  if (outer.size() < 3 || inner.size() < 3) fail(ErrorCode::Degenerate, "polygons need three vertices");
  if (theta_cells < 16) fail(ErrorCode::Domain, "resolution too small");
  for (auto v : inner)
    if (!contains(outer, v)) fail(ErrorCode::Degenerate, "inner polygon is not inside the outer one");
  for (auto v : outer)
    if (contains(inner, v)) fail(ErrorCode::Degenerate, "outer polygon meets the inner region");
  cplx w = center ? *center : default_center(inner);
  if (!contains(inner, w)) fail(ErrorCode::Domain, "center must lie inside the inner region");
  double r_in = distance_to_boundary(inner, w);
  double r_out = 0.0;
  for (auto v : outer) r_out = std::max(r_out, std::abs(v - w));
  if (r_in <= 0) fail(ErrorCode::Domain, "center lies on the inner boundary");

  const int nt = theta_cells;
  const double h = 2.0 * M_PI / nt;
  const double u0 = std::log(r_in) - 2.0 * h, u1 = std::log(1.02 * r_out);
  const int nu = static_cast<int>(std::ceil((u1 - u0) / h));
  auto idx = [nt](int i, int j) { return static_cast<size_t>(i) * nt + j; };
  std::vector<std::uint8_t> type(static_cast<size_t>(nu) * nt, kFree);

  std::vector<double> cin, cout;
  for (int j = 0; j < nt; ++j) {
    double th = (j + 0.5) * h;
    ray_crossings(inner, w, th, cin);
    ray_crossings(outer, w, th, cout);
    size_t pin = 0, pout = 0;
    for (int i = 0; i < nu; ++i) {
      double rho = std::exp(u0 + (i + 0.5) * h);
      while (pin < cin.size() && cin[pin] <= rho) ++pin;
      while (pout < cout.size() && cout[pout] <= rho) ++pout;
      bool in_inner = (cin.size() - pin) % 2 == 1;
      bool in_outer = (cout.size() - pout) % 2 == 1;
      type[idx(i, j)] = in_inner ? kZero : (in_outer ? kFree : kOne);
    }
  }
  // Thin parts of the inner set (slits) may miss every cell centre.
  auto mark = [&](cplx z) {
    cplx d = z - w;
    double rho = std::abs(d);
    if (rho <= 0) return;
    int i = static_cast<int>(std::floor((std::log(rho) - u0) / h));
    double th = std::arg(d);
    if (th < 0) th += 2.0 * M_PI;
    int j = static_cast<int>(std::floor(th / h)) % nt;
    if (i >= 0 && i < nu) type[idx(i, j)] = kZero;
  };
  for (size_t k = 0, n = inner.size(); k < n; ++k) {
    cplx a = inner[k], b = inner[(k + 1) % n];
    double len = std::abs(b - a), t = 0.0;
    while (t < len) {
      cplx z = a + (b - a) * (t / len);
      mark(z);
      t += std::max(0.3 * h * std::abs(z - w), 1e-300);
    }
    mark(b);
  }

  // Keep free components that touch both boundary values.
  std::vector<int> comp(type.size(), -1);
  int ncomp = 0;
  std::vector<char> good;
  for (size_t s = 0; s < type.size(); ++s) {
    if (type[s] != kFree || comp[s] >= 0) continue;
    bool t0 = false, t1 = false;
    std::queue<size_t> q;
    q.push(s);
    comp[s] = ncomp;
    while (!q.empty()) {
      size_t c = q.front();
      q.pop();
      int i = static_cast<int>(c / nt), j = static_cast<int>(c % nt);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        int ii = i + di[k], jj = (j + dj[k] + nt) % nt;
        if (ii < 0) { t0 = true; continue; }
        if (ii >= nu) { t1 = true; continue; }
        size_t nb = idx(ii, jj);
        if (type[nb] == kZero) t0 = true;
        else if (type[nb] == kOne) t1 = true;
        else if (comp[nb] < 0) {
          comp[nb] = ncomp;
          q.push(nb);
        }
      }
    }
    good.push_back(t0 && t1);
    ++ncomp;
  }
  std::vector<int> unknown(type.size(), -1);
  int n_unknown = 0;
  for (size_t s = 0; s < type.size(); ++s) {
    if (type[s] != kFree) continue;
    if (good[comp[s]]) unknown[s] = n_unknown++;
    else type[s] = kDropped;
  }
  if (n_unknown == 0) fail(ErrorCode::Degenerate, "annulus has no interior cells at this resolution");

  auto value_of = [&](int i, int j, double& v) -> int {
    // 0: unknown, 1: fixed value, 2: no neighbour
    if (i < 0) { v = 0.0; return 1; }
    if (i >= nu) { v = 1.0; return 1; }
    size_t s = idx(i, j);
    if (type[s] == kZero) { v = 0.0; return 1; }
    if (type[s] == kOne) { v = 1.0; return 1; }
    if (type[s] == kDropped) return 2;
    return 0;
  };

  // Primal potential: 0 on the inner set, 1 outside.
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_unknown);
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nt; ++j) {
      int a = unknown[idx(i, j)];
      if (a < 0) continue;
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      double diag = 0.0;
      for (int k = 0; k < 4; ++k) {
        int ii = i + di[k], jj = (j + dj[k] + nt) % nt;
        double v = 0.0;
        int kind = value_of(ii, jj, v);
        if (kind == 2) continue;
        diag += 1.0;
        if (kind == 1) rhs[a] += v;
        else trip.emplace_back(a, unknown[idx(ii, jj)], -1.0);
      }
      trip.emplace_back(a, a, diag);
    }
  Eigen::SparseMatrix<double> lap(n_unknown, n_unknown);
  lap.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lap);
  if (solver.info() != Eigen::Success) fail(ErrorCode::Numeric, "primal factorisation failed");
  Eigen::VectorXd u = solver.solve(rhs);

  auto cell_value = [&](int i, int j, double& v) -> bool {
    int kind = value_of(i, j, v);
    if (kind == 2) return false;
    if (kind == 0) v = u[unknown[idx(i, j)]];
    return true;
  };
  double energy_u = 0.0;
  for (int i = -1; i < nu; ++i)
    for (int j = 0; j < nt; ++j) {
      double a = 0, b = 0;
      bool has_a = cell_value(i, j, a);
      if (!has_a) continue;
      // right and up neighbours
      double c = 0;
      if (i >= 0 && cell_value(i, (j + 1) % nt, c)) energy_u += (a - c) * (a - c);
      if (i + 1 <= nu && cell_value(i + 1, j, b)) energy_u += (a - b) * (a - b);
    }

  // Dual: conjugate function with unit jump across the theta seam, free ends.
  // One cell per connected piece is grounded; a pinched ring splits into several.
  std::vector<int> dual_index(n_unknown, -1);
  std::vector<char> grounded_comp(ncomp, 0);
  int n_dual = 0;
  for (size_t s = 0; s < type.size(); ++s) {
    int a = unknown[s];
    if (a < 0) continue;
    if (!grounded_comp[comp[s]]) grounded_comp[comp[s]] = 1;
    else dual_index[a] = n_dual++;
  }
  trip.clear();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(std::max(n_dual, 1));
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nt; ++j) {
      int a = unknown[idx(i, j)];
      if (a < 0 || dual_index[a] < 0) continue;
      const int da = dual_index[a];
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      double diag = 0.0;
      for (int k = 0; k < 4; ++k) {
        int ii = i + di[k], jj = j + dj[k];
        bool seam = jj < 0 || jj >= nt;
        jj = (jj + nt) % nt;
        if (ii < 0 || ii >= nu) continue;
        int b = unknown[idx(ii, jj)];
        if (b < 0) continue;
        diag += 1.0;
        if (dual_index[b] >= 0) trip.emplace_back(da, dual_index[b], -1.0);
        if (seam) g[da] += (dj[k] > 0) ? -1.0 : 1.0;
      }
      trip.emplace_back(da, da, diag);
    }
  double energy_v = 0.0;
  {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n_unknown);
    if (n_dual > 0) {
      Eigen::SparseMatrix<double> dl(n_dual, n_dual);
      dl.setFromTriplets(trip.begin(), trip.end());
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> dsolver(dl);
      if (dsolver.info() != Eigen::Success) fail(ErrorCode::Numeric, "dual factorisation failed");
      Eigen::VectorXd sol = dsolver.solve(g);
      for (int a = 0; a < n_unknown; ++a)
        if (dual_index[a] >= 0) v[a] = sol[dual_index[a]];
    }
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nt; ++j) {
        int a = unknown[idx(i, j)];
        if (a < 0) continue;
        int jn = (j + 1) % nt;
        int b = unknown[idx(i, jn)];
        if (b >= 0) {
          double jump = (jn == 0) ? 1.0 : 0.0;
          double dv = v[b] - v[a] - jump;
          energy_v += dv * dv;
        }
        if (i + 1 < nu) {
          int c = unknown[idx(i + 1, j)];
          if (c >= 0) energy_v += (v[c] - v[a]) * (v[c] - v[a]);
        }
      }
  }

  AnnulusReport r;
  r.primal = energy_u > 0 ? 1.0 / energy_u : INFINITY;
  r.dual = energy_v;
  r.estimate = 0.5 * (r.primal + r.dual);
  r.error_bound = 0.5 * std::abs(r.primal - r.dual);
  r.center = w;
  r.theta_cells = nt;
  r.radial_cells = nu;
  return r;
}

}  // namespace cantor
