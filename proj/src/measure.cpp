#include "cantor/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "cantor/error.hpp"
#include "cantor/kss_nest.hpp"
#include "cantor/puzzle.hpp"

namespace cantor {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double wilson_halfwidth(int k, int n) {
  if (n == 0) return 1;
  const double z = 1.959963984540054;
  double p = static_cast<double>(k) / n;
  return z / (1 + z * z / n) * std::sqrt(p * (1 - p) / n + z * z / (4.0 * n * n));
}

bool contains_id(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

long long all_degrees(const PieceEngine& e) {
  long long d = 1;
  for (int c = 0; c < e.critical_count(); ++c) d *= e.local_degree(c);
  return d;
}

}  // namespace

DensityProbe density_probe_region(const RationalMap& map, const Polygon& region, int samples, int iter_cap,
                                  std::uint64_t seed) {
  if (samples < 1) fail(ErrorCode::Domain, "density probe needs samples");
  if (iter_cap < 0) fail(ErrorCode::Domain, "negative iteration cap");
  DensityProbe out;
  const Box box = bounding_box(region);
  std::mt19937_64 rng(seed);
  int drawn = 0;
  const int max_draws = 200 * samples;
  while (out.sample_count < samples && drawn < max_draws) {
    ++drawn;
    cplx z(box.x0 + box.width() * unit(rng), box.y0 + box.height() * unit(rng));
    if (!contains(region, z)) continue;
    ++out.sample_count;
    if (!escape_time(map, z, iter_cap)) ++out.bounded_count;
  }
  if (out.sample_count == 0) fail(ErrorCode::Degenerate, "no sample fell inside the region");
  out.area_estimate = box.width() * box.height() * out.sample_count / drawn;
  out.julia_fraction = static_cast<double>(out.bounded_count) / out.sample_count;
  out.halfwidth = wilson_halfwidth(out.bounded_count, out.sample_count);
  return out;
}

DensityProbe density_probe(Puzzle& pz, int piece, int samples, int iter_cap, std::uint64_t seed) {
  DensityProbe out = density_probe_region(pz.map(), pz.geometry(piece).boundary, samples, iter_cap, seed);
  out.piece = piece;
  out.depth = pz.node(piece).depth;
  return out;
}

std::vector<DensityProbe> density_chain(Puzzle& pz, int orbit, int max_depth, int samples, int iter_cap,
                                        std::uint64_t seed) {
  std::vector<DensityProbe> out;
  for (int n = 0; n <= max_depth; ++n)
    out.push_back(density_probe(pz, pz.piece_of(orbit, 0, n), samples, iter_cap, seed + n));
  return out;
}

const char* point_class_name(PointClassId c) {
  switch (c) {
    case PointClassId::X1: return "X1";
    case PointClassId::X2: return "X2";
    case PointClassId::X3: return "X3";
    case PointClassId::X4: return "X4";
    case PointClassId::Undetermined: return "undetermined-at-cap";
  }
  return "?";
}

PointClass classify_point(const PieceEngine& e, const CritGraph& g, int orbit, PointCaps caps) {
  PointClass pc;
  pc.orbit = orbit;
  pc.depth_cap = caps.depth;
  pc.time_cap = std::min(caps.time, e.orbit_length(orbit) - 1);
  const int k = e.critical_count();

  // f^j(x) = c as far as the data can tell
  for (int j = 0; j <= pc.time_cap && pc.preimage_time < 0; ++j)
    for (int c = 0; c < k; ++c) {
      int a = e.critical_agreement(orbit, j, c, 0);
      int room = std::min(e.orbit_length(orbit) - j, e.orbit_length(c)) - 2;
      if (a >= room && a >= caps.depth) pc.preimage_time = j;
    }
  if (pc.preimage_time >= 0) {
    pc.id = PointClassId::X1;
    pc.reason = "f^" + std::to_string(pc.preimage_time) + "(x) agrees with a critical orbit to the end of the data";
    return pc;
  }

  for (int c = 0; c < k; ++c)
    if (reaches(e, orbit, c, caps.depth, pc.time_cap)) pc.crit.push_back(c);
  bool undetermined = false;
  for (int c : pc.crit) {
    if (g.non_critical[c]) pc.crit_n.push_back(c);
    if (g.type[c] == CritType::Persistent) pc.crit_p.push_back(c);
    if (g.type[c] == CritType::Reluctant) pc.crit_r.push_back(c);
  }
  auto escorts = [&](const std::vector<int>& base, std::vector<int>& out) {
    for (int c1 : pc.crit) {
      if (g.arrow[c1][c1]) continue;
      for (int c : base)
        if (g.arrow[c1][c]) {
          out.push_back(c1);
          break;
        }
    }
  };
  escorts(pc.crit_n, pc.crit_en);
  escorts(pc.crit_p, pc.crit_ep);
  escorts(pc.crit_r, pc.crit_er);
  for (int c : pc.crit) {
    bool covered = contains_id(pc.crit_n, c) || contains_id(pc.crit_p, c) || contains_id(pc.crit_r, c) ||
                   contains_id(pc.crit_en, c) || contains_id(pc.crit_ep, c) || contains_id(pc.crit_er, c);
    if (!covered) undetermined = true;
  }

  auto only = [&](std::initializer_list<const std::vector<int>*> sets) {
    for (int c : pc.crit) {
      bool in = false;
      for (auto* s : sets) in = in || contains_id(*s, c);
      if (!in) return false;
    }
    return true;
  };
  if (pc.crit.empty()) {
    pc.id = PointClassId::X2;
    pc.reason = "Crit(x) is empty";
  } else if (!pc.crit_n.empty() || !pc.crit_r.empty()) {
    pc.id = PointClassId::X2;
    pc.reason = "x reaches a non-critical or reluctant critical point";
  } else if (undetermined) {
    pc.reason = "a critical point in Crit(x) has no type at these caps";
  } else if (!pc.crit_ep.empty() && only({&pc.crit_p, &pc.crit_ep})) {
    pc.id = PointClassId::X3;
    pc.reason = "Crit(x) = Crit_p(x) u Crit_ep(x) with Crit_ep(x) nonempty";
  } else if (!pc.crit_p.empty() && only({&pc.crit_p})) {
    pc.id = PointClassId::X4;
    pc.reason = "Crit(x) = Crit_p(x)";
  } else {
    pc.reason = "Crit(x) fits none of the classes at these caps";
  }
  return pc;
}

bool FirstReturns::ok() const {
  if (times.empty()) return false;
  for (long long d : degrees)
    if (d < 1 || d > bound) return false;
  return true;
}

namespace {

// Keeps the times whose image lands in the most common depth-0 piece.
void settle_p0(const PieceEngine& e, int orbit, FirstReturns& fr) {
  std::map<int, int> count;
  for (int t : fr.times) ++count[e.label(orbit, t)];
  int best = -1, best_count = 0;
  for (auto [label, n] : count)
    if (n > best_count) {
      best = label;
      best_count = n;
    }
  fr.p0 = best;
  FirstReturns kept = fr;
  kept.times.clear();
  kept.degrees.clear();
  for (size_t i = 0; i < fr.times.size(); ++i)
    if (e.label(orbit, fr.times[i]) == best) {
      kept.times.push_back(fr.times[i]);
      kept.degrees.push_back(fr.degrees[i]);
    }
  fr = kept;
}

// First row n0 of T(orbit) with no critical position in columns 1..time_cap.
int quiet_row(const PieceEngine& e, int orbit, int depth_cap, int time_cap) {
  int deepest = -1;
  for (int j = 1; j <= time_cap; ++j)
    for (int c = 0; c < e.critical_count(); ++c) deepest = std::max(deepest, e.critical_agreement(orbit, j, c, 0));
  return deepest + 1 <= depth_cap ? deepest + 1 : -1;
}

int first_position(const PieceEngine& e, int orbit, int c, int row, int time_cap) {
  for (int j = 1; j <= time_cap; ++j)
    if (e.critical_agreement(orbit, j, c, 0) >= row) return j;
  return -1;
}

}  // namespace

FirstReturns first_return_degrees(PieceEngine& e, const CritGraph& g, const PointClass& pc, PointCaps caps) {
  if (pc.id != PointClassId::X2 && pc.id != PointClassId::X3)
    fail(ErrorCode::Precondition, std::string("first returns are defined on X2 and X3, not ") + point_class_name(pc.id));
  const int x = pc.orbit;
  const int len = e.orbit_length(x);
  const int time_cap = std::min(caps.time, len - 1);
  const long long D = all_degrees(e);
  FirstReturns fr;

  if (pc.crit.empty()) {
    int n0 = quiet_row(e, x, caps.depth, time_cap);
    if (n0 < 0) fail(ErrorCode::Cap, "no critical-free row below the depth cap");
    fr.case_id = 1;
    for (int n = 1; n0 + n <= time_cap && e.resolvable(x, 0, n0 + n); ++n) {
      fr.times.push_back(n0 + n);
      fr.degrees.push_back(diagonal_degree(e, x, 0, 0, n0 + n));
    }
    // rows below n0 hold at most one mark per column on a diagonal
    fr.bound = ipow(D, n0 + 1);
    fr.detail = "critical-free row n0 = " + std::to_string(n0);
  } else if (!pc.crit_n.empty()) {
    const int c = pc.crit_n.front();
    const int n0 = g.non_critical_row[c];
    fr.case_id = 2;
    for (int n = 1; n0 + n <= caps.depth; ++n) {
      int row = n0 + n;
      int l = first_position(e, x, c, row, time_cap);
      if (l < 0) break;
      if (!e.resolvable(x, 0, row + l)) break;
      fr.times.push_back(row + l);
      fr.degrees.push_back(diagonal_degree(e, x, 0, 0, row + l));
    }
    // N1 from the critical-free row of T(c), N2 from one mark per critical point
    fr.bound = ipow(D, n0 + 1) * D;
    fr.detail = "through c" + std::to_string(c) + ", its critical-free row " + std::to_string(n0);
  } else if (!pc.crit_r.empty()) {
    const int c = pc.crit_r.front();
    fr.case_id = 3;
    for (int n0 = 0; n0 <= caps.depth && fr.times.empty(); ++n0)
      for (int c1 : g.klass[c]) {
        auto kids = children_of(e, c1, n0, g.child_cap, g.klass[c]);
        if (kids.size() < 2) continue;
        for (const Child& ch : kids) {
          int m = first_position(e, x, ch.critical, n0 + ch.k, time_cap);
          if (m < 0 || !e.resolvable(x, 0, n0 + ch.k + m)) continue;
          fr.times.push_back(n0 + ch.k + m);
          fr.degrees.push_back(diagonal_degree(e, x, 0, 0, n0 + ch.k + m));
        }
        fr.bound = D * D * ipow(D, n0);
        fr.detail = "children of P_" + std::to_string(n0) + "(c" + std::to_string(c1) + ")";
        if (!fr.times.empty()) break;
      }
  } else {
    const int c0 = pc.crit_ep.front();
    fr.case_id = 4;
    for (int j = 1; j <= time_cap; ++j)
      if (e.critical_agreement(x, j, c0, 0) >= 0 && e.resolvable(x, 0, j)) {
        fr.times.push_back(j);
        fr.degrees.push_back(diagonal_degree(e, x, 0, 0, j));
      }
    fr.bound = D;
    fr.detail = "c" + std::to_string(c0) + "-positions in row 0";
  }
  if (fr.times.empty()) fail(ErrorCode::Cap, "no first-return time found at cap");
  settle_p0(e, x, fr);
  return fr;
}

std::string format_density(const std::vector<DensityProbe>& rows) {
  std::ostringstream out;
  out << "piece_id,depth,area,fraction,halfwidth,samples\n";
  for (const auto& r : rows)
    out << r.piece << ',' << r.depth << ',' << fmt12(r.area_estimate) << ',' << fmt12(r.julia_fraction) << ','
        << fmt12(r.halfwidth) << ',' << r.sample_count << '\n';
  return out.str();
}

std::string format_point_class(const PointClass& pc, const FirstReturns* fr) {
  std::ostringstream out;
  auto list = [&](const char* name, const std::vector<int>& v) {
    out << name << ":";
    for (int c : v) out << " c" << c;
    out << "\n";
  };
  out << "orbit " << pc.orbit << " class " << point_class_name(pc.id) << " (" << pc.reason << ")\n";
  out << "caps depth " << pc.depth_cap << " time " << pc.time_cap << "\n";
  list("Crit(x)", pc.crit);
  list("Crit_n(x)", pc.crit_n);
  list("Crit_p(x)", pc.crit_p);
  list("Crit_r(x)", pc.crit_r);
  list("Crit_en(x)", pc.crit_en);
  list("Crit_ep(x)", pc.crit_ep);
  list("Crit_er(x)", pc.crit_er);
  if (fr) {
    out << "first returns: case " << fr->case_id << ", P0 = depth-0 piece " << fr->p0 << ", bound D = " << fr->bound
        << " (" << fr->detail << ")\n";
    for (size_t i = 0; i < fr->times.size() && i < 24; ++i)
      out << "  i=" << fr->times[i] << " deg=" << fr->degrees[i] << "\n";
    out << (fr->ok() ? "pass" : "FAIL") << " degrees <= D\n";
  }
  return out.str();
}

}  // namespace cantor
