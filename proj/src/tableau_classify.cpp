#include <algorithm>
#include <sstream>

#include "cantor/error.hpp"
#include "cantor/tableau.hpp"

namespace cantor {

CritGraph classify(PieceEngine& e, ClassifyCaps caps) {
  CritGraph g;
  const int k = e.critical_count();
  g.count = k;
  g.depth_cap = caps.depth;
  g.child_cap = caps.child_k;
  g.time_cap = caps.time;
  for (int c = 0; c < k; ++c) g.time_cap = std::min(g.time_cap, e.orbit_length(c) - 1);
  g.arrow.assign(k, std::vector<bool>(k, false));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) g.arrow[a][b] = reaches(e, a, b, g.depth_cap, g.time_cap);
  g.klass.assign(k, {});
  g.forward.assign(k, {});
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (g.arrow[a][b]) g.forward[a].push_back(b);
      if (g.arrow[a][b] && g.arrow[b][a]) g.klass[a].push_back(b);
    }

  g.type.assign(k, CritType::Undetermined);
  g.non_critical.assign(k, false);
  g.non_critical_row.assign(k, -1);
  g.periodic.assign(k, false);
  g.windows.assign(k, {});
  g.forward_equals_class.assign(k, true);
  for (int c = 0; c < k; ++c) {
    int deepest = -1;
    for (int j = 1; j <= g.time_cap; ++j)
      for (int c2 = 0; c2 < k; ++c2) deepest = std::max(deepest, e.critical_agreement(c, j, c2, 0));
    if (deepest + 1 <= g.depth_cap) {
      g.non_critical[c] = true;
      g.non_critical_row[c] = deepest + 1;
    }
    // periodic at cap: the agreement of f^p(c) with c runs into the end of the data
    const int len = e.orbit_length(c);
    for (int p = 1; p <= g.child_cap && p < len; ++p)
      if (e.critical_agreement(c, p, c, 0) >= len - p - 2) g.periodic[c] = true;

    if (std::find(g.klass[c].begin(), g.klass[c].end(), c) == g.klass[c].end()) {
      g.type[c] = CritType::NonRecurrent;
      continue;
    }
    const int half = g.child_cap / 2;
    bool late_child = false, reluctant = false;
    for (int c1 : g.klass[c])
      for (int n = 0; n <= g.depth_cap; ++n) {
        auto kids = children_of(e, c1, n, g.child_cap, g.klass[c]);
        ChildWindow w{n, c1, static_cast<int>(kids.size()), 0};
        bool late = false;
        for (const auto& ch : kids) {
          w.max_k = std::max(w.max_k, ch.k);
          if (ch.k > half) late = true;
        }
        if (late) late_child = true;
        if (late && w.count >= 3) reluctant = true;
        g.windows[c].push_back(w);
      }
    g.type[c] = reluctant ? CritType::Reluctant : (late_child ? CritType::Undetermined : CritType::Persistent);
  }
  for (int c = 0; c < k; ++c) {
    if (g.non_critical[c]) g.crit_n.push_back(c);
    if (g.type[c] == CritType::Persistent) {
      g.crit_p.push_back(c);
      g.forward_equals_class[c] = g.forward[c] == g.klass[c];
    }
    if (g.type[c] == CritType::Reluctant) g.crit_r.push_back(c);
  }
  auto extend = [&](const std::vector<int>& base, std::vector<int>& out) {
    for (int c = 0; c < k; ++c) {
      if (g.arrow[c][c]) continue;
      for (int b : base)
        if (g.arrow[c][b]) {
          out.push_back(c);
          break;
        }
    }
  };
  extend(g.crit_n, g.crit_en);
  extend(g.crit_p, g.crit_ep);
  extend(g.crit_r, g.crit_er);
  return g;
}

namespace {

std::string list(const std::vector<int>& v) {
  std::ostringstream out;
  out << '[';
  for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << 'c' << v[i];
  out << ']';
  return out.str();
}

}  // namespace

std::string format_crit_graph(const CritGraph& g) {
  std::ostringstream out;
  out << "crit_graph caps depth=" << g.depth_cap << " time=" << g.time_cap << " child_k=" << g.child_cap << "\n";
  for (int c = 0; c < g.count; ++c) {
    std::vector<int> to;
    for (int b = 0; b < g.count; ++b)
      if (g.arrow[c][b]) to.push_back(b);
    out << "c" << c << ": type=" << crit_type_name(g.type[c]) << " arrows->" << list(to) << " class=" << list(g.klass[c])
        << " non_critical=" << (g.non_critical[c] ? "yes(row " + std::to_string(g.non_critical_row[c]) + ")" : "no")
        << " periodic_at_cap=" << (g.periodic[c] ? "yes" : "no");
    if (g.type[c] == CritType::Persistent)
      out << " F=class:" << (g.forward_equals_class[c] ? "yes" : "NO") << " (cap-limited)";
    out << "\n";
    int last_new = 0, total = 0;
    for (const auto& w : g.windows[c]) {
      total += w.count;
      last_new = std::max(last_new, w.max_k);
    }
    if (!g.windows[c].empty())
      out << "  children: " << total << " over depths 0.." << g.depth_cap << ", largest return exponent " << last_new
          << " of window " << g.child_cap << "\n";
  }
  out << "Crit_n=" << list(g.crit_n) << " Crit_p=" << list(g.crit_p) << " Crit_r=" << list(g.crit_r)
      << " Crit_en=" << list(g.crit_en) << " Crit_ep=" << list(g.crit_ep) << " Crit_er=" << list(g.crit_er) << "\n";
  return out.str();
}

}  // namespace cantor
