#include "cantor/tableau.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

Tableau build_tableau(PieceEngine& e, int orbit, int rows, int cols) {
  if (rows < 1 || cols < 1) fail(ErrorCode::Domain, "tableau needs positive caps");
  const int need = rows + cols - 1;
  const int len = e.orbit_length(orbit);
  for (int t = 0; t < std::min(need, len); ++t)
    if (e.label(orbit, t) == -1) fail(ErrorCode::Precondition, "orbit escapes at column " + std::to_string(t));
  if (len < need) fail(ErrorCode::Cap, "orbit holds " + std::to_string(len) + " points, tableau needs " + std::to_string(need));
  Tableau t;
  t.orbit = orbit;
  t.rows = rows;
  t.cols = cols;
  t.entry.assign(static_cast<size_t>(rows) * cols, -1);
  t.mark.assign(static_cast<size_t>(rows) * cols, -1);
  for (int l = 0; l < cols; ++l)
    for (int n = 0; n < rows; ++n) {
      if (!e.resolvable(orbit, l, n)) break;
      t.at(n, l) = e.piece_of(orbit, l, n);
      for (int c = 0; c < e.critical_count(); ++c)
        if (e.critical_agreement(orbit, l, c, 0) >= n) t.mark_at(n, l) = c;
    }
  return t;
}

namespace {

struct Collector {
  std::set<std::tuple<std::string, int, int>> seen;
  std::vector<RuleViolation> out;
  void add(const std::string& rule, int n, int l, const std::string& detail) {
    if (seen.insert({rule, n, l}).second) out.push_back({rule, n, l, detail});
  }
};

void column_consistency(const Tableau& t, const PieceEngine& e, Collector& col) {
  for (int l = 0; l < t.cols; ++l) {
    // broken[n]: link between rows n-1 and n fails
    std::vector<bool> broken(t.rows, false);
    for (int n = 1; n < t.rows; ++n) {
      if (t.hole(n, l) || t.hole(n - 1, l)) continue;
      const PieceNode& node = e.node(t.at(n, l));
      broken[n] = node.depth != n || node.parent != t.at(n - 1, l);
    }
    if (!t.hole(0, l) && e.node(t.at(0, l)).depth != 0) col.add("T1", 0, l, "depth-0 entry is not a depth-0 piece");
    for (int n = 1; n < t.rows; ++n) {
      if (!broken[n]) continue;
      if (broken[n - 1]) continue;  // already blamed on row n-1
      bool next = n + 1 < t.rows && broken[n + 1];
      int blame = n;
      if (!next && n == 1 && t.rows > 2) blame = 0;
      col.add("T1", blame, l, "column consistency broken");
    }
  }
}

}  // namespace

std::vector<RuleViolation> check_rules(const Tableau& t, const std::vector<Tableau>& critical, const PieceEngine& e) {
  Collector col;
  column_consistency(t, e, col);
  for (int l = 0; l < t.cols; ++l)
    for (int n = 0; n < t.rows; ++n) {
      int c = t.mark_at(n, l);
      if (c < 0 || t.hole(n, l)) continue;
      const Tableau& tc = critical.at(c);
      for (int i = 0; i <= n; ++i) {
        if (t.hole(i, l) || tc.hole(i, 0)) continue;
        if (t.at(i, l) != tc.at(i, 0))
          col.add("T1", i, l, "c" + std::to_string(c) + "-position at row " + std::to_string(n) + " but P_i differs");
      }
      for (int j = 1; j <= n && l + j < t.cols && j < tc.cols; ++j)
        for (int i = 0; i + j <= n; ++i) {
          if (t.hole(i, l + j) || tc.hole(i, j)) continue;
          if (t.at(i, l + j) != tc.at(i, j))
            col.add("T2", i, l + j, "from c" + std::to_string(c) + "-position (" + std::to_string(n) + "," + std::to_string(l) + ")");
        }
    }
  // (T3): c-position (n,m) that stops at row n; a c1-position (n+1-l, l) of T(c)
  // with no critical position on the diagonal between forbids (n+1-l, m+l).
  for (int m = 1; m < t.cols; ++m)
    for (int n = 0; n + 1 < t.rows; ++n) {
      int c = t.mark_at(n, m);
      if (c < 0 || t.hole(n, m) || t.hole(n + 1, m) || t.mark_at(n + 1, m) == c) continue;
      const Tableau& tc = critical.at(c);
      for (int l = 0; l < n && m + l < t.cols && l < tc.cols; ++l) {
        int c1 = tc.mark_at(n + 1 - l, l);
        if (c1 < 0 || tc.hole(n + 1 - l, l)) continue;
        bool clear = true;
        for (int i = 1; i < l && clear; ++i) clear = tc.mark_at(n - i, i) < 0;
        if (!clear) continue;
        if (!t.hole(n + 1 - l, m + l) && t.mark_at(n + 1 - l, m + l) == c1)
          col.add("T3", n + 1 - l, m + l,
                  "from c" + std::to_string(c) + "-position (" + std::to_string(n) + "," + std::to_string(m) + "), l=" + std::to_string(l));
      }
    }
  return col.out;
}

std::string format_tableau(const Tableau& t, const PieceEngine& e) {
  std::ostringstream out;
  out << "# tableau of orbit " << t.orbit << ": " << t.rows << " rows x " << t.cols << " columns\n";
  out << "# legend: digit = critical position of that Julia critical point, '.' = non-critical, '?' = hole\n";
  for (int n = 0; n < t.rows; ++n) {
    out << (n < 10 ? " " : "") << n << " ";
    for (int l = 0; l < t.cols; ++l) {
      if (t.hole(n, l)) out << '?';
      else if (t.mark_at(n, l) >= 0) out << static_cast<char>('0' + t.mark_at(n, l) % 10);
      else out << '.';
    }
    out << "\n";
  }
  out << "# pieces of column 0:";
  for (int n = 0; n < t.rows; ++n)
    if (!t.hole(n, 0)) out << ' ' << e.piece_name(t.at(n, 0));
  out << "\n";
  return out.str();
}

bool reaches(const PieceEngine& e, int orbit, int c, int depth_cap, int time_cap) {
  int best = -1;
  const int len = e.orbit_length(orbit);
  for (int j = 1; j <= time_cap && j < len; ++j) best = std::max(best, e.critical_agreement(orbit, j, c, 0));
  return best >= depth_cap;
}

std::vector<Child> children_of(PieceEngine& e, int c, int n, int k_cap, const std::vector<int>& klass,
                               bool with_pieces) {
  std::vector<Child> out;
  for (int c1 : klass) {
    const int len = e.orbit_length(c1);
    // f^k is conformal on P_{n+k-1}(f c1) iff no critical mark lies on the
    // diagonal, i.e. max over 1 <= m < k of A(f^m c1, c2) + m stays below n + k.
    long long reach = -1;
    for (int k = 1; k <= k_cap && k < len; ++k) {
      if (!e.resolvable(c1, 0, n + k)) break;
      if (k > 1)
        for (int c2 = 0; c2 < e.critical_count(); ++c2)
          reach = std::max(reach, static_cast<long long>(e.critical_agreement(c1, k - 1, c2, 0)) + (k - 1));
      if (e.critical_agreement(c1, k, c, 0) < n) continue;
      if (reach < n + k) out.push_back({c1, k, with_pieces ? e.piece_of(c1, 0, n + k) : -1});
    }
  }
  return out;
}

std::vector<Child> children_brute_force(PieceEngine& e, int c, int n, int k_cap, const std::vector<int>& klass) {
  std::vector<Child> out;
  const int target = e.piece_of(c, 0, n);
  auto is_critical_piece = [&](int piece) {
    int depth = e.node(piece).depth;
    for (int c2 = 0; c2 < e.critical_count(); ++c2)
      if (e.resolvable(c2, 0, depth) && e.piece_of(c2, 0, depth) == piece) return true;
    return false;
  };
  for (int c1 : klass)
    for (int k = 1; k <= k_cap && k < e.orbit_length(c1); ++k) {
      if (!e.resolvable(c1, 0, n + k)) break;
      if (e.piece_of(c1, k, n) != target) continue;
      bool conformal = true;
      for (int m = 1; m < k && conformal; ++m) conformal = !is_critical_piece(e.piece_of(c1, m, n + k - m));
      if (conformal) out.push_back({c1, k, e.piece_of(c1, 0, n + k)});
    }
  return out;
}

long long diagonal_degree(const PieceEngine& e, int orbit, int t, int n0, int k) {
  long long deg = 1;
  for (int m = 0; m < k; ++m)
    for (int c = 0; c < e.critical_count(); ++c)
      if (e.critical_agreement(orbit, t + m, c, 0) >= n0 + k - m) {
        deg *= e.local_degree(c);
        if (deg > (1LL << 60)) fail(ErrorCode::Numeric, "degree overflow");
      }
  return deg;
}

const char* crit_type_name(CritType t) {
  switch (t) {
    case CritType::NonRecurrent: return "non-recurrent";
    case CritType::Persistent: return "persistently-recurrent";
    case CritType::Reluctant: return "reluctantly-recurrent";
    case CritType::Undetermined: return "undetermined-at-cap";
  }
  return "?";
}

}  // namespace cantor
