#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "cantor/error.hpp"
#include "pipeline_impl.hpp"

namespace cantor {

namespace {

nlohmann::json point_json(const ExtPoint& p) {
  if (p.infinite) return "inf";
  return nlohmann::json::array({num(p.z.real()), num(p.z.imag())});
}

std::pair<std::string, int> parse_symbolic(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) fail(ErrorCode::Parse, "symbolic model is SEED:LAG, got '" + spec + "'");
  return {spec.substr(0, colon), std::stoi(spec.substr(colon + 1))};
}

}  // namespace

void stage_map(RunState& s, StageResult& r) {
  if (!s.m.symbolic.empty()) {
    auto [seed, lag] = parse_symbolic(s.m.symbolic);
    s.symbolic = std::make_unique<SymbolicPuzzle>(kneading_itinerary(seed, lag, s.m.symbolic_length));
    std::ostringstream out;
    out << "symbolic kneading model seed " << seed << " lag " << lag << " length " << s.m.symbolic_length << "\n";
    out << "itinerary of f(c): " << s.symbolic->itinerary(0).substr(1, 120) << "...\n";
    out << "this is a synthetic tableau instance, not a planar map\n";
    s.write("model.txt", out.str());
    r.note = "synthetic symbolic instance";
    return;
  }
  s.map = load_map(s.m.map_path);
  const RationalMap& f = *s.map;
  nlohmann::ordered_json j;
  j["label"] = f.label();
  j["degree"] = f.degree();
  auto crit = critical_points(f);
  int mult = 0;
  for (const auto& c : crit) {
    j["critical_points"].push_back({{"point", point_json(c.point)}, {"local_degree", c.local_degree}});
    mult += c.local_degree - 1;
  }
  ++r.checks;
  if (mult != 2 * f.degree() - 2) {
    ++r.failures;
    r.note = "critical multiplicity " + std::to_string(mult);
  }
  for (const auto& p : fixed_points(f)) {
    j["fixed_points"].push_back({{"point", point_json(p.point)},
                                 {"multiplier", {num(p.multiplier.real()), num(p.multiplier.imag())}},
                                 {"class", fixed_point_class_name(p.kind)}});
    if (p.point.infinite) continue;
    ++r.checks;
    if (std::abs(f(p.point.z) - p.point.z) >= 1e-10) ++r.failures;
  }
  auto cert = basin_certificate(f);
  j["basin"] = {{"escape_radius", num(cert.radius)},
                {"escaping_critical", cert.escaping.size()},
                {"bounded_critical", cert.bounded.size()},
                {"cantor", cert.cantor_status}};
  if (f.is_polynomial()) {
    int bad = 0;
    for (int k = 0; k < 360; ++k) {
      cplx z = std::polar(2 * cert.radius, 2 * M_PI * k / 360);
      if (!(std::abs(f(z)) > std::abs(z))) ++bad;
    }
    ++r.checks;
    if (bad) ++r.failures;
  }
  s.write("map.json", j.dump(1) + "\n");
}

void stage_puzzle(RunState& s, StageResult& r) {
  if (s.symbolic) {
    // combinatorial checks only: parents and images along the critical orbit
    auto& e = *s.symbolic;
    std::ostringstream out;
    int bad = 0;
    for (int t = 0; t < 64; ++t)
      for (int n = 1; n <= s.m.depth; ++n) {
        const PieceNode& node = e.node(e.piece_of(0, t, n));
        bad += node.parent != e.piece_of(0, t, n - 1) || node.image != e.piece_of(0, t + 1, n - 1);
        ++r.checks;
      }
    r.failures = bad;
    out << "symbolic pieces along the critical orbit, depths 1.." << s.m.depth << ": " << r.checks
        << " parent/image links, " << bad << " broken\n";
    s.write("puzzle_checks.txt", out.str());
    r.note = "no planar pieces in the symbolic model";
    return;
  }
  PuzzleOptions opt;
  opt.grid_cells = static_cast<int>(std::lround(1.0 / s.m.resolution));
  s.puzzle = std::make_unique<Puzzle>(*s.map, opt);
  Puzzle& pz = *s.puzzle;
  const int samples = std::min(1000, std::max(50, s.m.samples / 50));
  PuzzleCheck pc = check_puzzle(pz, s.m.depth, samples, s.m.seed);
  r.checks = pc.nesting_tests + pc.disjoint_tests + pc.image_tests + 1;
  r.failures = pc.nesting_failures + pc.disjoint_failures + pc.image_failures + (pc.shrinking ? 0 : 1);

  std::ostringstream out;
  out << "N0 " << pz.n0() << " G0 " << fmt12(pz.g0()) << " depth-0 pieces " << pz.depth0_count() << "\n";
  out << "samples " << samples << " depths 0.." << s.m.depth << " pieces built " << pc.pieces << "\n";
  out << "nesting " << pc.nesting_tests << " tests, " << pc.nesting_failures << " failures\n";
  out << "disjointness " << pc.disjoint_tests << " pairs, " << pc.disjoint_failures << " failures\n";
  out << "image law " << pc.image_tests << " pieces, " << pc.image_failures << " failures\n";
  out << "shrinking " << (pc.shrinking ? "yes" : "NO") << "; max diameter by depth:";
  for (double d : pc.max_diameter) out << " " << fmt12(d);
  out << "\n";
  for (const auto& f : pc.failures) out << "  " << f << "\n";
  s.write("puzzle_checks.txt", out.str());

  // catalog; polygons only for shallow pieces to keep the file small
  nlohmann::ordered_json cat = nlohmann::ordered_json::array();
  std::map<int, std::vector<Polygon>> layers;
  for (int id = 0; id < pz.node_count(); ++id) {
    if (!pz.has_geometry(id)) continue;
    const PieceNode& n = pz.node(id);
    const PieceGeometry& g = pz.geometry(id);
    nlohmann::ordered_json p;
    p["id"] = pz.piece_name(id);
    p["code"] = pz.piece_code(id);
    p["depth"] = n.depth;
    p["parent"] = n.parent >= 0 ? pz.piece_name(n.parent) : "";
    p["image"] = n.image >= 0 ? pz.piece_name(n.image) : "";
    p["critical"] = n.critical;
    p["box"] = {num(g.box.x0), num(g.box.y0), num(g.box.x1), num(g.box.y1)};
    if (n.depth <= 4) {
      Polygon poly = simplify(g.boundary, g.h / 2);
      nlohmann::json v = nlohmann::json::array();
      for (cplx z : poly) v.push_back({num(z.real()), num(z.imag())});
      p["polygon"] = v;
      layers[n.depth].push_back(poly);
    }
    cat.push_back(p);
  }
  s.write("pieces.json", cat.dump(1) + "\n");
  std::vector<std::pair<std::string, std::vector<Polygon>>> svg;
  for (auto& [d, polys] : layers) svg.push_back({"depth " + std::to_string(d), polys});
  s.write("puzzle.svg", svg_polygons(svg));
}

void stage_tableau(RunState& s, StageResult& r) {
  PieceEngine& e = s.engine();
  const int rows = s.tableau_rows, cols = s.m.cols;
  if (s.puzzle) s.puzzle->ensure_critical_length(rows + cols + 8);
  std::vector<Tableau> crit;
  for (int c = 0; c < e.critical_count(); ++c) crit.push_back(build_tableau(e, c, rows, cols));
  std::vector<int> orbits;
  if (s.puzzle)
    for (int k = 0; k < 4; ++k) orbits.push_back(s.puzzle->add_julia_orbit(rows + 40, s.m.seed + 500 + k));

  std::ostringstream rules;
  auto check = [&](const Tableau& t, const std::string& name) {
    auto v = check_rules(t, crit, e);
    ++r.checks;
    if (!v.empty()) ++r.failures;
    rules << name << ": " << t.rows << "x" << t.cols << ", " << v.size() << " violations\n";
    for (size_t i = 0; i < v.size() && i < 20; ++i)
      rules << "  " << v[i].rule << " at (" << v[i].n << "," << v[i].l << ") " << v[i].detail << "\n";
  };
  for (int c = 0; c < e.critical_count(); ++c) {
    check(crit[c], "T(c" + std::to_string(c) + ")");
    s.write("tableau_c" + std::to_string(c) + ".txt", format_tableau(crit[c], e));
  }
  for (int o : orbits) check(build_tableau(e, o, rows, std::min(cols, 40)), "T(x" + std::to_string(o) + ")");
  if (e.critical_count() == 0) rules << "no Julia critical points: Crit is empty\n";
  s.write("tableau_rules.txt", rules.str());

  ClassifyCaps caps;
  caps.depth = rows;
  caps.time = cols;
  if (s.symbolic) caps.child_k = 128;
  s.graph = classify(e, caps);
  s.write("crit_graph.txt", format_crit_graph(*s.graph));
  // the prediction F(c) = [c] for persistent c
  for (int c = 0; c < s.graph->count; ++c)
    if (s.graph->type[c] == CritType::Persistent) {
      ++r.checks;
      if (!s.graph->forward_equals_class[c]) ++r.failures;
    }
}

}  // namespace cantor
