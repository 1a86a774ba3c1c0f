#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "cantor/error.hpp"
#include "cantor/geometry.hpp"
#include "cantor/kss_nest.hpp"
#include "cantor/measure.hpp"
#include "cantor/pipeline.hpp"
#include "cantor/puzzle.hpp"
#include "cantor/symbolic.hpp"
#include "cantor/tableau.hpp"

namespace cantor {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> corpus_maps(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") out.push_back(entry.path().string());
  std::sort(out.begin(), out.end());
  if (out.empty()) fail(ErrorCode::Io, "no maps in " + dir);
  return out;
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

void suite_geometry(SuiteResult& r, std::uint64_t seed) {
  for (double big : {std::exp(1.0), std::exp(2.0), 4.0}) {
    auto t0 = Clock::now();
    auto rep = modulus(circle_polygon(0.0, big, 4096), circle_polygon(0.0, 1.0, 4096));
    double secs = seconds_since(t0);
    double exact = std::log(big) / (2 * M_PI);
    double rel = std::abs(rep.estimate - exact) / exact;
    r.lines.push_back({"round annulus R=" + fmt12(big), rel < 0.02 && secs < 10,
                       "estimate " + fmt12(rep.estimate) + " exact " + fmt12(exact) + " rel " + fmt12(rel) +
                           " time " + fmt12(secs) + "s"});
  }
  // A z^k cover of an annulus has 1/k of its modulus.
  for (int k : {2, 3, 4}) {
    const int v = 3000;
    Polygon outer_v(v), inner_v(v), outer_u(v), inner_u(v);
    for (int i = 0; i < v; ++i) {
      double th = 2.0 * M_PI * i / v;
      double ro = 0.9 * (1 + 0.08 * std::cos(3 * th)), ri = 0.05 * (1 + 0.3 * std::cos(2 * th));
      outer_v[i] = std::polar(ro, th);
      inner_v[i] = std::polar(ri, th);
      double rou = 0.9 * (1 + 0.08 * std::cos(3 * k * th)), riu = 0.05 * (1 + 0.3 * std::cos(2 * k * th));
      outer_u[i] = std::polar(std::pow(rou, 1.0 / k), th);
      inner_u[i] = std::polar(std::pow(riu, 1.0 / k), th);
    }
    auto t0 = Clock::now();
    auto mv = modulus(outer_v, inner_v);
    auto mu = modulus(outer_u, inner_u);
    double secs = seconds_since(t0) / 2;
    double rel = std::abs(mv.estimate - k * mu.estimate) / mv.estimate;
    r.lines.push_back({"covering degree " + std::to_string(k), rel < 0.04 && secs < 10,
                       "mod V " + fmt12(mv.estimate) + " k mod U " + fmt12(k * mu.estimate) + " rel " + fmt12(rel)});
  }
  bool decreasing = true;
  std::string vals;
  double prev = INFINITY;
  for (int i = 1; i <= 9; ++i) {
    double m = grotzsch_modulus(i / 10.0);
    decreasing = decreasing && m < prev;
    prev = m;
    vals += (i > 1 ? " " : "") + fmt12(m);
  }
  r.lines.push_back({"slit modulus decreasing on r=0.1..0.9", decreasing, vals});
  auto cases = extremal_trials(50, seed, 0.02);
  int bad = 0;
  double worst = 0;
  for (const auto& c : cases) {
    bad += !c.ok;
    worst = std::max(worst, c.annulus.estimate / c.slit_modulus);
  }
  r.lines.push_back({"mod(A) <= mod(B_r) on random configurations", bad == 0 && cases.size() == 50,
                     std::to_string(cases.size()) + " cases, " + std::to_string(bad) +
                         " violations, worst mod(A)/mod(B_r) " + fmt12(worst)});
}

void suite_blaschke(SuiteResult& r, std::uint64_t seed) {
  for (double m : {0.25, 0.5, 1.0})
    for (int d : {2, 3}) {
      auto rep = verify_blaschke_shape(200, d, m, seed + 10 * d + static_cast<int>(4 * m));
      r.lines.push_back({"Shape(U,0) <= K Shape(V,0)^(1/d) m=" + fmt12(m) + " d=" + std::to_string(d),
                         rep.violations == 0 && rep.trials == 200,
                         std::to_string(rep.trials) + " trials, " + std::to_string(rep.violations) +
                             " violations, worst ratio " + fmt12(rep.worst_ratio) + " K " + fmt12(rep.bound)});
    }
  auto rep = koebe_gap_check(0.5, 100, seed);
  r.lines.push_back({"d(w, bd U) >= c(m) diam(U~) m=0.5", rep.violations == 0 && rep.trials == 100,
                     std::to_string(rep.trials) + " trials, " + std::to_string(rep.violations) +
                         " violations, worst ratio " + fmt12(rep.worst_ratio) + " c " + fmt12(rep.bound)});
}

void suite_tableau(SuiteResult& r, const std::string& corpus, std::uint64_t seed) {
  std::unique_ptr<Puzzle> keep;
  for (const auto& path : corpus_maps(corpus)) {
    auto pz = std::make_unique<Puzzle>(load_map(path));
    PieceEngine& e = pz->engine();
    pz->ensure_critical_length(24 + 512 + 8);
    std::vector<Tableau> crit;
    for (int c = 0; c < e.critical_count(); ++c) crit.push_back(build_tableau(e, c, 24, 512));
    int built = 0, violations = 0;
    for (const auto& t : crit) {
      ++built;
      violations += static_cast<int>(check_rules(t, crit, e).size());
    }
    for (int k = 0; k < 4; ++k) {
      int o = pz->add_julia_orbit(24 + 40, seed + 500 + k);
      ++built;
      violations += static_cast<int>(check_rules(build_tableau(e, o, 24, 40), crit, e).size());
    }
    r.lines.push_back({"T1/T2 on " + stem(path), violations == 0,
                       std::to_string(built) + " tableaux (critical 24x512, Julia 24x40), " +
                           std::to_string(violations) + " violations"});
    if (!crit.empty() && !keep) keep = std::move(pz);
  }
  if (!keep) {
    r.lines.push_back({"corruption detected", false, "no corpus map with a Julia critical point"});
    return;
  }
  // corrupt one entry of a critical tableau and expect T1 at that spot
  PieceEngine& e = keep->engine();
  std::vector<Tableau> crit{build_tableau(e, 0, 24, 64)};
  Tableau t = crit[0];
  const int n = 7, l = 20;
  int other = -1;
  for (int j = 0; j < t.cols && other < 0; ++j)
    if (t.at(n, j) != t.at(n, l) && e.node(t.at(n, j)).parent != t.at(n - 1, l)) other = t.at(n, j);
  bool found = false;
  if (other >= 0) {
    t.at(n, l) = other;
    for (const auto& v : check_rules(t, crit, e)) found = found || (v.rule == "T1" && v.n == n && v.l == l);
  }
  r.lines.push_back({"corruption detected", found,
                     "entry (" + std::to_string(n) + "," + std::to_string(l) + ") swapped, " +
                         (found ? "T1 reported there" : "not reported")});
}

void suite_nest(SuiteResult& r, const std::string& corpus) {
  bool real = false;
  for (const auto& path : corpus_maps(corpus)) {
    Puzzle pz(load_map(path));
    pz.ensure_critical_length(540);
    PieceEngine& e = pz.engine();
    CritGraph g = classify(e, {});
    std::string types;
    for (int c = 0; c < g.count; ++c) {
      types += std::string(c ? " " : "") + crit_type_name(g.type[c]);
      if (g.type[c] != CritType::Persistent) continue;
      real = true;
      const int len = pz.orbit_length(c);
      Nest nest = build_nest(e, make_context(e, g, c, len / 2, std::min(len / 4, 4 * g.child_cap)), 0, 2);
      auto checks = check_kss_inequalities(e, nest);
      int bad = 0;
      for (const auto& k : checks) bad += !k.pass;
      r.lines.push_back({"inequality matrix on " + stem(path), bad == 0 && nest.levels.size() >= 2,
                         std::to_string(nest.levels.size()) + " levels, " + std::to_string(checks.size()) +
                             " checks, " + std::to_string(bad) + " failures"});
    }
    r.lines.push_back({"recurrence on " + stem(path), true, types.empty() ? "no Julia critical points" : types});
  }
  if (real) return;
  const int len = 300000;
  SymbolicPuzzle sp(kneading_itinerary("W", 2, len));
  Nest nest = build_nest(sp, make_context(sp, 0, {0}, len / 2, len / 4), 0, 2);
  auto checks = check_kss_inequalities(sp, nest);
  int bad = 0;
  for (const auto& k : checks) bad += !k.pass;
  r.lines.push_back({"inequality matrix on the synthetic instance", bad == 0 && nest.levels.size() >= 2,
                     "no corpus map is persistently recurrent at caps; substituted the symbolic kneading model "
                     "W:2 (Fibonacci combinatorics), " +
                         std::to_string(nest.levels.size()) + " levels, " + std::to_string(checks.size()) +
                         " checks, " + std::to_string(bad) + " failures"});
}

void suite_density(SuiteResult& r, const std::string& corpus, std::uint64_t seed) {
  auto t0 = Clock::now();
  Puzzle pz(load_map((std::filesystem::path(corpus) / "z2p5.json").string()));
  int o = pz.add_julia_orbit(12, seed);
  auto rows = density_chain(pz, o, 10, 10000, 200, seed);
  double secs = seconds_since(t0);
  bool down = true;
  std::string vals;
  for (size_t n = 0; n < rows.size(); ++n) {
    if (n > 0) down = down && rows[n].julia_fraction <= rows[n - 1].julia_fraction + rows[n - 1].halfwidth;
    vals += (n ? " " : "") + fmt12(rows[n].julia_fraction);
  }
  r.lines.push_back({"z2p5 julia fraction non-increasing over depths 0..10", down && rows.size() == 11, vals});
  bool small = !rows.empty() && rows.back().julia_fraction < 0.05;
  r.lines.push_back({"z2p5 julia fraction < 0.05 at depth 10", small,
                     rows.empty() ? "no rows" : fmt12(rows.back().julia_fraction)});
  r.lines.push_back({"z2p5 density runtime < 60 s", secs < 60, fmt12(secs) + "s"});
}

}  // namespace

bool SuiteResult::pass() const {
  for (const auto& l : lines)
    if (!l.pass) return false;
  return !lines.empty();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"geometry", "tableau-rules", "nest-inequalities", "blaschke",
                                              "density"};
  return names;
}

SuiteResult run_suite(const std::string& name, const std::string& corpus_dir, std::uint64_t seed) {
  SuiteResult r;
  r.suite = name;
  if (name == "geometry") suite_geometry(r, seed);
  else if (name == "blaschke") suite_blaschke(r, seed);
  else if (name == "tableau-rules") suite_tableau(r, corpus_dir, seed);
  else if (name == "nest-inequalities") suite_nest(r, corpus_dir);
  else if (name == "density") suite_density(r, corpus_dir, seed);
  else fail(ErrorCode::Domain, "unknown suite '" + name + "'");
  return r;
}

std::string format_suite(const SuiteResult& r) {
  std::ostringstream out;
  out << "suite " << r.suite << "\n";
  for (const auto& l : r.lines) out << (l.pass ? "PASS " : "FAIL ") << l.check << ": " << l.detail << "\n";
  out << (r.pass() ? "PASS" : "FAIL") << " " << r.suite << "\n";
  return out.str();
}

}  // namespace cantor
