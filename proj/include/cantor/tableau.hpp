#pragma once

#include <string>
#include <vector>

#include "cantor/engine.hpp"

namespace cantor {

// Array of pieces P_{n,l}(x) = P_n(f^l x) for one orbit, with critical marks.
struct Tableau {
  int orbit = -1;
  int rows = 0, cols = 0;
  std::vector<int> entry;  // piece id, -1 for a hole
  std::vector<int> mark;   // Julia critical index in the piece, -1 otherwise

  int at(int n, int l) const { return entry[static_cast<size_t>(n) * cols + l]; }
  int mark_at(int n, int l) const { return mark[static_cast<size_t>(n) * cols + l]; }
  int& at(int n, int l) { return entry[static_cast<size_t>(n) * cols + l]; }
  int& mark_at(int n, int l) { return mark[static_cast<size_t>(n) * cols + l]; }
  bool hole(int n, int l) const { return at(n, l) < 0; }
};

// Holes are left where the orbit meets an unresolved point; an escaping
// orbit is a precondition failure.
Tableau build_tableau(PieceEngine& e, int orbit, int rows, int cols);

struct RuleViolation {
  std::string rule;  // "T1", "T2", "T3"
  int n = 0, l = 0;
  std::string detail;
};

// critical[c] must be the tableau of critical orbit c with at least `rows` columns.
std::vector<RuleViolation> check_rules(const Tableau& t, const std::vector<Tableau>& critical, const PieceEngine& e);

std::string format_tableau(const Tableau& t, const PieceEngine& e);

// x -> c at caps: every depth n <= depth_cap is met by some time 1 <= j <= time_cap.
bool reaches(const PieceEngine& e, int orbit, int c, int depth_cap, int time_cap);

struct Child {
  int critical = -1;  // c' in [c]
  int k = 0;          // f^k maps the child onto P_n(c)
  int piece = -1;
};

// Without piece ids the children are found from agreements alone (piece = -1).
std::vector<Child> children_of(PieceEngine& e, int c, int n, int k_cap, const std::vector<int>& klass,
                               bool with_pieces = true);
// Independent enumeration through piece ids only.
std::vector<Child> children_brute_force(PieceEngine& e, int c, int n, int k_cap, const std::vector<int>& klass);

// Degree of f^k on the depth (n0 + k) piece around f^t(orbit), read off the diagonal.
long long diagonal_degree(const PieceEngine& e, int orbit, int t, int n0, int k);

enum class CritType { NonRecurrent, Persistent, Reluctant, Undetermined };
const char* crit_type_name(CritType t);

struct ChildWindow {
  int n = 0;
  int critical = -1;
  int count = 0;
  int max_k = 0;
};

struct CritGraph {
  int count = 0;
  std::vector<std::vector<bool>> arrow;   // arrow[a][b]: a -> b at caps
  std::vector<std::vector<int>> klass;    // [c]
  std::vector<std::vector<int>> forward;  // F(c)
  std::vector<CritType> type;
  std::vector<bool> non_critical;         // T(c) non-critical at caps
  std::vector<int> non_critical_row;
  std::vector<bool> periodic;             // some period k <= cap repeats to the depth cap
  std::vector<std::vector<ChildWindow>> windows;
  std::vector<int> crit_n, crit_p, crit_r, crit_en, crit_ep, crit_er;
  std::vector<bool> forward_equals_class;  // checked where persistent
  int depth_cap = 0, time_cap = 0, child_cap = 0;
};

struct ClassifyCaps {
  int depth = 24;
  int time = 512;
  int child_k = 64;
};

CritGraph classify(PieceEngine& e, ClassifyCaps caps = {});
std::string format_crit_graph(const CritGraph& g);

}  // namespace cantor
