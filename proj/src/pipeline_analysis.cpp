#include <algorithm>
#include <cmath>
#include <sstream>

#include "cantor/error.hpp"
#include "cantor/geometry.hpp"
#include "cantor/measure.hpp"
#include "pipeline_impl.hpp"

namespace cantor {

namespace {

void ensure_graph(RunState& s) {
  if (s.graph) return;
  if (s.puzzle) s.puzzle->ensure_critical_length(540);
  ClassifyCaps caps;
  if (s.symbolic) caps.child_k = 128;
  s.graph = classify(s.engine(), caps);
}

std::string witness_line(const ShenWitness& w, int time) {
  std::ostringstream out;
  out << "n " << w.n << " x=f^" << time << "(c0): l " << w.l << " v " << w.v << " u " << w.u << " depths V~/V/V' "
      << w.V_t << "/" << w.V << "/" << w.V_p << " U~/U/U' " << w.U_t << "/" << w.U << "/" << w.U_p
      << " deg f^l " << w.deg_l_Vp << "/" << w.deg_l_V << "/" << w.deg_l_Vt << " deg f^v " << w.deg_v_Vp
      << " deg f^u " << w.deg_u_Up << "/" << w.deg_u_U << "/" << w.deg_u_Ut << " D2 " << w.D2 << " D3 " << w.D3 << "\n";
  out << "  " << (w.conformal ? "pass" : "FAIL") << " f^v conformal on V'\n";
  out << "  " << (w.sandwich_l ? "pass" : "FAIL") << " 2 <= deg(f^l|V') <= D2\n";
  out << "  " << (w.sandwich_u ? "pass" : "FAIL") << " 2 <= deg(f^u|U') <= D3\n";
  out << "  " << (w.chain_ok ? "pass" : "FAIL") << " f^u(U~) = Lambda~\n";
  return out.str();
}

// smallest distance from a vertex of inner to the boundary of outer
double polygon_gap(const Polygon& outer, const Polygon& inner) {
  double best = INFINITY;
  for (cplx z : inner) best = std::min(best, distance_to_boundary(outer, z));
  return best;
}

}  // namespace

void stage_nest(RunState& s, StageResult& r) {
  PieceEngine& e = s.engine();
  ensure_graph(s);
  const CritGraph& g = *s.graph;
  std::optional<NestContext> ctx;
  if (s.symbolic) {
    const int len = s.m.symbolic_length;
    ctx = make_context(e, 0, {0}, len / 2, len / 4);
    ctx->persistent = g.type[0] == CritType::Persistent;
  } else {
    for (int c = 0; c < g.count && !ctx; ++c)
      if (g.type[c] == CritType::Persistent || g.type[c] == CritType::Undetermined) {
        const int len = s.puzzle->orbit_length(c);
        ctx = make_context(e, g, c, len / 2, std::min(len / 4, 4 * g.child_cap));
      }
  }
  if (!ctx) {
    s.write("nest.txt", "no recurrent Julia critical point at caps; the nest is not built\n");
    r.note = "no recurrent critical point";
    return;
  }
  s.nest = build_nest(e, *ctx, 0, s.m.nest_levels);
  auto checks = check_kss_inequalities(e, *s.nest);
  r.checks = static_cast<int>(checks.size());
  for (const auto& c : checks) r.failures += !c.pass;
  std::string head;
  if (s.symbolic) head = "synthetic instance: symbolic kneading model " + s.m.symbolic + " stands in for a planar map\n";
  s.write("nest.txt", head + format_nest(*s.nest, checks));
  r.note = std::to_string(s.nest->levels.size()) + " levels";
  if (s.nest->failed_level >= 0) r.note += ", stopped at level " + std::to_string(s.nest->failed_level);
  if (s.symbolic) r.note += ", synthetic instance";
  if (s.nest->levels.size() < 2) {
    ++r.checks;
    ++r.failures;
    r.note += ", fewer than two levels";
  }

  std::string wit;
  int lower_misses = 0;
  for (const NestLevel& lv : s.nest->levels)
    for (int time : {1, 2, 7}) {
      try {
        ShenWitness w = shen_witness(e, *s.nest, lv.n, ctx->c0, time, ctx->time_cap);
        wit += witness_line(w, time);
        r.checks += 3;
        r.failures += !w.conformal + !w.sandwich_u + !w.chain_ok;
        // with l == v the pulled-back map is univalent, so the lower bound cannot hold
        if (!w.sandwich_l) ++lower_misses;
      } catch (const Error& err) {
        wit += "n " + std::to_string(lv.n) + " x=f^" + std::to_string(time) + "(c0): " + err.what() + "\n";
      }
    }
  if (lower_misses)
    wit += std::to_string(lower_misses) + " witnesses miss 2 <= deg(f^l|V'); reported, not counted as failures\n";
  s.write("witness.txt", wit);
}

void stage_geometry(RunState& s, StageResult& r) {
  std::ostringstream out;
  if (s.symbolic) {
    out << "the symbolic model has no planar pieces; moduli and shapes are not available\n";
    s.write("annulus.txt", out.str());
    r.note = "no planar pieces";
    return;
  }
  Puzzle& pz = *s.puzzle;
  std::vector<int> points(pz.julia_critical().size());
  for (size_t i = 0; i < points.size(); ++i) points[i] = static_cast<int>(i);
  points.push_back(pz.add_julia_orbit(s.m.depth + 2, s.m.seed + 700));
  const int top = std::min(s.m.depth, 8);
  int unresolved = 0;
  out << "point,n,mod(P_n \\ P_n+1),error,shape(P_n),gap,h\n";
  for (int o : points) {
    cplx x = pz.orbit_approx(o, 0);
    for (int n = 0; n < top; ++n) {
      const PieceGeometry& outer = pz.geometry(pz.piece_of(o, 0, n));
      const PieceGeometry& inner = pz.geometry(pz.piece_of(o, 0, n + 1));
      AnnulusReport a = modulus(outer.boundary, inner.boundary, 512, x);
      double sh = shape(outer.boundary, x);
      double gap = polygon_gap(outer.boundary, inner.boundary);
      r.checks += 2;
      r.failures += !(std::isfinite(sh) && sh >= 1);
      // a ring thinner than two grid cells is below what the boundaries resolve
      if (!(a.estimate > a.error_bound)) {
        if (gap < 2 * outer.h) ++unresolved;
        else ++r.failures;
      }
      out << o << "," << n << "," << fmt12(a.estimate) << "," << fmt12(a.error_bound) << "," << fmt12(sh) << ","
          << fmt12(gap) << "," << fmt12(outer.h) << "\n";
    }
  }
  if (unresolved) {
    out << unresolved << " rings thinner than two grid cells: modulus not certified, not counted\n";
    r.note = std::to_string(unresolved) + " rings below grid resolution";
  }
  if (s.nest && !s.nest->levels.empty()) {
    const int c0 = s.nest->ctx.c0;
    cplx x = pz.orbit_approx(c0, 0);
    out << "nest level,mod(K' \\ K),error,mod(K \\ K~),error,shape(K)\n";
    std::vector<std::pair<std::string, std::vector<Polygon>>> svg;
    for (const NestLevel& lv : s.nest->levels) {
      const Polygon& kp = pz.geometry(pz.piece_of(c0, 0, lv.Kp)).boundary;
      const Polygon& k = pz.geometry(pz.piece_of(c0, 0, lv.K)).boundary;
      const Polygon& kt = pz.geometry(pz.piece_of(c0, 0, lv.Kt)).boundary;
      AnnulusReport a = modulus(kp, k, 512, x), b = modulus(k, kt, 512, x);
      double sh = shape(k, x);
      r.checks += 3;
      r.failures += !(a.estimate > a.error_bound) + !(b.estimate > b.error_bound) + !std::isfinite(sh);
      out << lv.n << "," << fmt12(a.estimate) << "," << fmt12(a.error_bound) << "," << fmt12(b.estimate) << ","
          << fmt12(b.error_bound) << "," << fmt12(sh) << "\n";
      svg.push_back({"level " + std::to_string(lv.n), {kp, k, kt}});
    }
    s.write("nest.svg", svg_polygons(svg));
  }
  s.write("annulus.txt", out.str());
}

void stage_measure(RunState& s, StageResult& r) {
  ensure_graph(s);
  PieceEngine& e = s.engine();
  std::ostringstream cls;
  std::vector<int> points;
  if (s.symbolic) {
    const std::string crit = s.symbolic->itinerary(0);
    points.push_back(s.symbolic->add_itinerary(crit.substr(1, 20000)));
    points.push_back(s.symbolic->add_itinerary("W" + crit.substr(0, 20000)));
  } else {
    Puzzle& pz = *s.puzzle;
    const int chain = std::min(s.m.depth, 10);
    int o = pz.add_julia_orbit(chain + 2, s.m.seed + 900);
    auto rows = density_chain(pz, o, chain, s.m.samples, s.m.iter_cap, s.m.seed);
    for (size_t n = 1; n < rows.size(); ++n) {
      ++r.checks;
      if (rows[n].julia_fraction > rows[n - 1].julia_fraction + rows[n - 1].halfwidth) ++r.failures;
    }
    s.write("density.csv", format_density(rows));
    for (int k = 0; k < 3; ++k) points.push_back(pz.add_julia_orbit(600, s.m.seed + 800 + k));
    for (int c = 0; c < static_cast<int>(pz.julia_critical().size()); ++c)
      points.push_back(pz.add_forward_orbit(pz.orbit_point(c, 1), 540));
  }
  for (int o : points) {
    PointClass pc = classify_point(e, *s.graph, o);
    if (pc.id == PointClassId::X2 || pc.id == PointClassId::X3) {
      try {
        FirstReturns fr = first_return_degrees(e, *s.graph, pc);
        ++r.checks;
        r.failures += !fr.ok();
        cls << format_point_class(pc, &fr);
      } catch (const Error& err) {
        cls << format_point_class(pc, nullptr) << "first returns: " << err.what() << "\n";
      }
    } else {
      cls << format_point_class(pc, nullptr);
    }
    cls << "\n";
  }
  s.write("classification.txt", cls.str());
}

std::string svg_polygons(const std::vector<std::pair<std::string, std::vector<Polygon>>>& layers, int size) {
  Box box{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (const auto& [name, polys] : layers)
    for (const auto& p : polys) {
      Box b = bounding_box(p);
      box = {std::min(box.x0, b.x0), std::min(box.y0, b.y0), std::max(box.x1, b.x1), std::max(box.y1, b.y1)};
    }
  if (!std::isfinite(box.x0)) box = {-1, -1, 1, 1};
  const double span = std::max(box.width(), box.height()) * 1.05;
  const double scale = size / span;
  const double cx = (box.x0 + box.x1) / 2, cy = (box.y0 + box.y1) / 2;
  const char* colours[] = {"#1b4965", "#5fa8d3", "#c1121f", "#e09f3e", "#335c67", "#9e2a2b", "#540b0e"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  int k = 0;
  for (const auto& [name, polys] : layers) {
    out << "<g id=\"" << name << "\" fill=\"none\" stroke=\"" << colours[k++ % 7] << "\" stroke-width=\"0.8\">\n";
    for (const auto& p : polys) {
      out << "<polygon points=\"";
      for (size_t i = 0; i < p.size(); ++i) {
        double x = size / 2.0 + (p[i].real() - cx) * scale;
        double y = size / 2.0 - (p[i].imag() - cy) * scale;
        out << (i ? " " : "") << fmt12(x) << "," << fmt12(y);
      }
      out << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cantor
