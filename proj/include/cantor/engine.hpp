#pragma once

#include <array>
#include <string>
#include <vector>

namespace cantor {

constexpr int kAgreeInf = 1 << 29;

struct PieceNode {
  int depth = 0;
  int index = 0;            // serial among pieces of the same depth
  int parent = -1;
  int image = -1;
  int rep_orbit = -1;
  int rep_time = 0;
  int critical = -1;        // Julia critical point inside, if any
  std::vector<int> children;
};

// Combinatorial core shared by the numeric puzzle and the symbolic model.
// Pieces are identified through agreement depths: A(a, b) is the largest n
// with P_n(a) = P_n(b). Orbits 0..k-1 are the critical orbits.
class PieceEngine {
 public:
  virtual ~PieceEngine() = default;

  // label_critical[l] = critical index inside depth-0 piece l, or -1.
  void setup(int depth0_count, std::vector<int> label_critical, std::vector<int> local_degree);
  int depth0_count() const { return depth0_count_; }
  int critical_count() const { return static_cast<int>(local_degree_.size()); }
  int local_degree(int c) const { return local_degree_.at(c); }
  int critical_piece(int c) const;

  // Labels are depth-0 pieces, -1 outside, -2 unresolved.
  int add_orbit_labels(std::vector<int> labels);
  void set_critical_labels(int c, std::vector<int> labels);
  int orbit_count() const { return static_cast<int>(orbits_.size()); }
  int orbit_length(int orbit) const;
  int label(int orbit, int time) const;
  int clean_length(int orbit) const;
  // Whether P_depth(f^time x) is resolvable from the stored labels.
  bool resolvable(int orbit, int time, int depth) const;

  int agreement(int oa, int ta, int ob, int tb) const;
  int critical_agreement(int orbit, int time, int c, int q) const;

  int piece_of(int orbit, int time, int depth);
  const PieceNode& node(int id) const;
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int depth_count(int depth) const;
  std::string piece_name(int id) const;
  std::string piece_code(int id) const;

 protected:
  // Whether two points of the critical piece of c lie in the same preimage
  // component; only asked when their images share a piece deeper than f(c)'s.
  virtual bool same_branch(int oa, int ta, int ob, int tb, int c) const = 0;

 private:
  struct Orbit {
    std::vector<int> label;
    std::vector<int> next_bad;  // first time >= t with an unusable label
    std::vector<std::array<std::vector<int>, 2>> prof;
    std::vector<std::vector<int>> nodes;
  };
  int walk(const Orbit& a, int oa, int ta, const Orbit& b, int ob, int tb) const;
  void profile(int orbit, int self_critical);
  static void index_bad(Orbit& o);

  int depth0_count_ = 0;
  std::vector<int> label_critical_;
  std::vector<int> local_degree_;
  std::vector<Orbit> orbits_;
  std::vector<PieceNode> nodes_;
  std::vector<int> per_depth_;
};

}  // namespace cantor
