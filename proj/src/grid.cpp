#include "cantor/grid.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "cantor/error.hpp"

namespace cantor {

bool VertexGrid::locate(cplx z, int& i, int& j) const {
  double fi = (z.real() - x0) / h, fj = (z.imag() - y0) / h;
  i = static_cast<int>(std::lround(fi));
  j = static_cast<int>(std::lround(fj));
  return i >= 0 && j >= 0 && i < nx && j < ny;
}

VertexGrid VertexGrid::sample(const Box& box, int cells, const std::function<double(cplx)>& f) {
  VertexGrid g;
  g.h = std::max(box.width(), box.height()) / cells;
  if (!(g.h > 0)) fail(ErrorCode::Degenerate, "empty sampling box");
  g.nx = static_cast<int>(std::ceil(box.width() / g.h)) + 1;
  g.ny = static_cast<int>(std::ceil(box.height() / g.h)) + 1;
  g.x0 = box.x0;
  g.y0 = box.y0;
  g.value.resize(static_cast<size_t>(g.nx) * g.ny);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) g.value[static_cast<size_t>(j) * g.nx + i] = f(g.point(i, j));
  return g;
}

std::vector<int> label_below(const VertexGrid& g, double level, int& count) {
  std::vector<int> lab(g.value.size(), -1);
  count = 0;
  std::vector<size_t> stack;
  for (size_t s = 0; s < lab.size(); ++s) {
    if (lab[s] >= 0 || !(g.value[s] < level)) continue;
    lab[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      size_t c = stack.back();
      stack.pop_back();
      int i = static_cast<int>(c % g.nx), j = static_cast<int>(c / g.nx);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        int ii = i + di[k], jj = j + dj[k];
        if (ii < 0 || jj < 0 || ii >= g.nx || jj >= g.ny) continue;
        size_t nb = static_cast<size_t>(jj) * g.nx + ii;
        if (lab[nb] < 0 && g.value[nb] < level) {
          lab[nb] = count;
          stack.push_back(nb);
        }
      }
    }
    ++count;
  }
  return lab;
}

Box component_box(const VertexGrid& g, const std::vector<int>& labels, int label) {
  Box b{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (labels[static_cast<size_t>(j) * g.nx + i] == label) {
        cplx z = g.point(i, j);
        b.x0 = std::min(b.x0, z.real());
        b.x1 = std::max(b.x1, z.real());
        b.y0 = std::min(b.y0, z.imag());
        b.y1 = std::max(b.y1, z.imag());
      }
  if (b.x0 > b.x1) fail(ErrorCode::Degenerate, "component has no vertices");
  return b;
}

Polygon component_contour(const VertexGrid& g, const std::vector<int>& labels, int label, double level) {
  auto in = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= g.nx || j >= g.ny) return false;
    return labels[static_cast<size_t>(j) * g.nx + i] == label;
  };
  auto hid = [&](int i, int j) { return 2 * (static_cast<long long>(j) * g.nx + i); };
  auto vid = [&](int i, int j) { return 2 * (static_cast<long long>(j) * g.nx + i) + 1; };
  auto crossing = [&](long long id) {
    long long base = id / 2;
    int i = static_cast<int>(base % g.nx), j = static_cast<int>(base / g.nx);
    int i2 = (id % 2 == 0) ? i + 1 : i, j2 = (id % 2 == 0) ? j : j + 1;
    auto val = [&](int a, int b) {
      if (a < 0 || b < 0 || a >= g.nx || b >= g.ny) return level + 1.0;
      return g.at(a, b);
    };
    double va = val(i, j), vb = val(i2, j2);
    double t = 0.5;
    if (std::isfinite(va) && std::isfinite(vb) && va != vb) t = std::clamp((level - va) / (vb - va), 0.0, 1.0);
    return g.point(i, j) + t * (g.point(i2, j2) - g.point(i, j));
  };
  std::unordered_map<long long, std::vector<long long>> link;
  auto connect = [&](long long a, long long b) {
    link[a].push_back(b);
    link[b].push_back(a);
  };
  for (int j = -1; j < g.ny; ++j)
    for (int i = -1; i < g.nx; ++i) {
      bool b0 = in(i, j), b1 = in(i + 1, j), b2 = in(i + 1, j + 1), b3 = in(i, j + 1);
      long long e0 = hid(i, j), e1 = vid(i + 1, j), e2 = hid(i, j + 1), e3 = vid(i, j);
      std::vector<long long> cut;
      if (b0 != b1) cut.push_back(e0);
      if (b1 != b2) cut.push_back(e1);
      if (b2 != b3) cut.push_back(e2);
      if (b3 != b0) cut.push_back(e3);
      if (cut.size() == 2) connect(cut[0], cut[1]);
      else if (cut.size() == 4) {
        if (b0) {
          connect(e3, e0);
          connect(e1, e2);
        } else {
          connect(e0, e1);
          connect(e2, e3);
        }
      }
    }
  std::unordered_map<long long, char> used;
  Polygon best;
  double best_area = -1.0;
  for (const auto& [start, partners] : link) {
    if (used[start]) continue;
    Polygon loop;
    long long prev = -1, cur = start;
    while (true) {
      used[cur] = 1;
      loop.push_back(crossing(cur));
      const auto& nb = link[cur];
      long long next = -1;
      for (auto c : nb)
        if (c != prev && !used[c]) {
          next = c;
          break;
        }
      if (next < 0) break;
      prev = cur;
      cur = next;
    }
    double a = std::abs(signed_area(loop));
    if (loop.size() >= 3 && a > best_area) {
      best_area = a;
      best = std::move(loop);
    }
  }
  if (best.size() < 3) fail(ErrorCode::Degenerate, "component has no closed contour");
  if (signed_area(best) < 0) std::reverse(best.begin(), best.end());
  return best;
}

}  // namespace cantor
