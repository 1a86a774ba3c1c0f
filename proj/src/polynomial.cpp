#include "cantor/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "cantor/error.hpp"

namespace cantor {

Poly trim(Poly p, double rel_tol) {
  double scale_max = 0.0;
  for (const auto& c : p) scale_max = std::max(scale_max, std::abs(c));
  while (!p.empty() && std::abs(p.back()) <= rel_tol * scale_max) p.pop_back();
  return p;
}

int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != cplx(0.0)) return i;
  return -1;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly out(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<double>(i);
  return out;
}

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly subtract(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Poly scale(const Poly& p, cplx s) {
  Poly out = p;
  for (auto& c : out) c *= s;
  return out;
}

Poly deflate(const Poly& p, cplx r) {
  int n = degree(p);
  if (n <= 0) return {};
  Poly q(n);
  cplx acc = 0.0;
  for (int i = n; i >= 1; --i) {
    acc = acc * r + p[i];
    q[i - 1] = acc;
  }
  return q;
}

Poly taylor_shift(const Poly& p, cplx c) {
  Poly q = p;
  int n = static_cast<int>(q.size());
  for (int k = 0; k < n; ++k)
    for (int i = n - 2; i >= k; --i) q[i] += c * q[i + 1];
  return q;
}

cplx newton_polish(const Poly& p, cplx z, int iterations) {
  Poly dp = derivative(p);
  for (int it = 0; it < iterations; ++it) {
    cplx v = horner(p, z);
    cplx dv = horner(dp, z);
    if (dv == cplx(0.0)) break;
    cplx step = v / dv;
    z -= step;
    if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

std::vector<cplx> simple_roots(const Poly& p) {
  Poly q = trim(p);
  int n = degree(q);
  if (n < 0) fail(ErrorCode::Degenerate, "zero polynomial has no isolated roots");
  if (n == 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -q[i] / q[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) fail(ErrorCode::Numeric, "eigenvalue solver failed");
  std::vector<cplx> out;
  for (int i = 0; i < n; ++i) out.push_back(newton_polish(q, solver.eigenvalues()[i], 8));
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

std::vector<Root> roots(const Poly& p, double cluster_tol) {
  Poly q = trim(p);
  int n = degree(q);
  if (n < 0) fail(ErrorCode::Degenerate, "zero polynomial has no isolated roots");
  if (n == 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -q[i] / q[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) fail(ErrorCode::Numeric, "eigenvalue solver failed");
  std::vector<cplx> raw(n);
  for (int i = 0; i < n; ++i) raw[i] = solver.eigenvalues()[i];

  std::vector<int> owner(n, -1);
  std::vector<Root> out;
  for (int i = 0; i < n; ++i) {
    if (owner[i] >= 0) continue;
    owner[i] = static_cast<int>(out.size());
    std::vector<cplx> members{raw[i]};
    for (int j = i + 1; j < n; ++j) {
      if (owner[j] >= 0) continue;
      double tol = cluster_tol * std::max(1.0, std::abs(raw[i]));
      if (std::abs(raw[j] - raw[i]) < tol) {
        owner[j] = owner[i];
        members.push_back(raw[j]);
      }
    }
    cplx mean = 0.0;
    for (auto m : members) mean += m;
    mean /= static_cast<double>(members.size());
    Poly target = q;
    for (size_t k = 1; k < members.size(); ++k) target = derivative(target);
    out.push_back({newton_polish(target, mean), static_cast<int>(members.size())});
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
  });
  return out;
}

}  // namespace cantor
