#include "cantor/engine.hpp"

#include <algorithm>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

namespace {

int inc(int a) { return a >= kAgreeInf ? kAgreeInf : a + 1; }

}  // namespace

void PieceEngine::setup(int depth0_count, std::vector<int> label_critical, std::vector<int> local_degree) {
  depth0_count_ = depth0_count;
  label_critical_ = std::move(label_critical);
  local_degree_ = std::move(local_degree);
  orbits_.assign(local_degree_.size(), {});
  nodes_.clear();
  for (int l = 0; l < depth0_count_; ++l) {
    PieceNode n;
    n.index = l;
    n.critical = label_critical_[l];
    nodes_.push_back(n);
  }
  per_depth_ = {depth0_count_};
}

int PieceEngine::critical_piece(int c) const {
  for (int l = 0; l < depth0_count_; ++l)
    if (label_critical_[l] == c) return l;
  return -1;
}

int PieceEngine::orbit_length(int orbit) const {
  if (orbit < 0 || orbit >= orbit_count()) fail(ErrorCode::Domain, "unknown orbit");
  return static_cast<int>(orbits_[orbit].label.size());
}

int PieceEngine::label(int orbit, int time) const {
  if (time < 0 || time >= orbit_length(orbit)) fail(ErrorCode::Domain, "orbit time out of range");
  return orbits_[orbit].label[time];
}

int PieceEngine::clean_length(int orbit) const {
  const auto& l = orbits_.at(orbit).label;
  int t = 0;
  while (t < static_cast<int>(l.size()) && l[t] >= 0) ++t;
  return t;
}

void PieceEngine::index_bad(Orbit& o) {
  const int len = static_cast<int>(o.label.size());
  o.next_bad.assign(len + 1, len);
  for (int t = len - 1; t >= 0; --t) o.next_bad[t] = o.label[t] < 0 ? t : o.next_bad[t + 1];
}

bool PieceEngine::resolvable(int orbit, int time, int depth) const {
  const auto& o = orbits_.at(orbit);
  if (time < 0 || depth < 0 || time >= static_cast<int>(o.label.size())) return false;
  return time + depth < o.next_bad[time];
}

int PieceEngine::walk(const Orbit& a, int oa, int ta, const Orbit& b, int ob, int tb) const {
  const int la = static_cast<int>(a.label.size()), lb = static_cast<int>(b.label.size());
  int k = 0;
  while (ta + k < la && tb + k < lb) {
    int x = a.label[ta + k], y = b.label[tb + k];
    if (x < 0 || y < 0 || x != y) break;
    ++k;
  }
  int acc = -1;
  for (int i = k - 1; i >= 0; --i) {
    int next = acc;
    int val = inc(next);
    int c = label_critical_[a.label[ta + i]];
    if (c >= 0 && ta + i + 1 < la && !a.prof.empty()) {
      int e = a.prof[c][1][ta + i + 1];
      if (e < kAgreeInf && next > e && !same_branch(oa, ta + i, ob, tb + i, c)) val = e + 1;
    }
    acc = val;
  }
  return acc;
}

void PieceEngine::profile(int orbit, int self_critical) {
  Orbit& o = orbits_[orbit];
  const int k = critical_count();
  const int len = static_cast<int>(o.label.size());
  o.prof.assign(k, {});
  for (auto& p : o.prof) {
    p[0].assign(len, -1);
    p[1].assign(len, -1);
  }
  for (int t = len - 1; t >= 0; --t)
    for (int c = 0; c < k; ++c) {
      if (self_critical == c && t == 1) o.prof[c][1][t] = kAgreeInf;
      else o.prof[c][1][t] = walk(o, orbit, t, orbits_[c], c, 1);
      if (self_critical == c && t == 0) o.prof[c][0][t] = kAgreeInf;
      else if (o.label[t] >= 0 && label_critical_[o.label[t]] == c)
        o.prof[c][0][t] = t + 1 < len ? inc(o.prof[c][1][t + 1]) : 0;
      else o.prof[c][0][t] = -1;
    }
}

int PieceEngine::add_orbit_labels(std::vector<int> labels) {
  Orbit o;
  o.label = std::move(labels);
  index_bad(o);
  orbits_.push_back(std::move(o));
  int id = orbit_count() - 1;
  profile(id, -1);
  return id;
}

void PieceEngine::set_critical_labels(int c, std::vector<int> labels) {
  if (c < 0 || c >= critical_count()) fail(ErrorCode::Domain, "unknown critical point");
  orbits_[c].label = std::move(labels);
  index_bad(orbits_[c]);
  orbits_[c].nodes.clear();
  for (int j = 0; j < critical_count(); ++j)
    if (!orbits_[j].label.empty()) profile(j, j);
}

int PieceEngine::agreement(int oa, int ta, int ob, int tb) const {
  if (oa == ob && ta == tb) return kAgreeInf;
  if (ta < 0 || tb < 0 || ta >= orbit_length(oa) || tb >= orbit_length(ob))
    fail(ErrorCode::Domain, "orbit time out of range");
  return walk(orbits_[oa], oa, ta, orbits_[ob], ob, tb);
}

int PieceEngine::critical_agreement(int orbit, int time, int c, int q) const {
  if (c < 0 || c >= critical_count() || q < 0 || q > 1) fail(ErrorCode::Domain, "bad critical agreement query");
  if (time < 0 || time >= orbit_length(orbit)) fail(ErrorCode::Domain, "orbit time out of range");
  return orbits_[orbit].prof[c][q][time];
}

int PieceEngine::piece_of(int orbit, int time, int depth) {
  if (depth < 0) fail(ErrorCode::Domain, "negative depth");
  const int len = orbit_length(orbit);
  if (time < 0 || time >= len) fail(ErrorCode::Domain, "orbit time out of range");
  if (!resolvable(orbit, time, depth)) {
    std::string at = " (depth " + std::to_string(depth) + ", time " + std::to_string(time) + ")";
    int bad = orbits_[orbit].next_bad[time];
    if (bad >= len) fail(ErrorCode::Cap, "orbit too short" + at);
    if (orbits_[orbit].label[bad] == -1) fail(ErrorCode::Domain, "orbit leaves the pieces at time " + std::to_string(bad) + at);
    fail(ErrorCode::Ambiguous, "unresolved point at time " + std::to_string(bad) + at);
  }
  {
    auto& tab = orbits_[orbit].nodes;
    if (static_cast<int>(tab.size()) <= depth) tab.resize(depth + 1);
    if (tab[depth].empty()) tab[depth].assign(len, -1);
    if (tab[depth][time] >= 0) return tab[depth][time];
  }
  int id = -1;
  if (depth == 0) {
    id = orbits_[orbit].label[time];
  } else {
    int parent = piece_of(orbit, time, depth - 1);
    int image = piece_of(orbit, time + 1, depth - 1);
    for (int child : nodes_[parent].children) {
      const PieceNode& c = nodes_[child];
      if (c.image == image && agreement(orbit, time, c.rep_orbit, c.rep_time) >= depth) {
        id = child;
        break;
      }
    }
    if (id < 0) {
      PieceNode n;
      n.depth = depth;
      n.parent = parent;
      n.image = image;
      n.rep_orbit = orbit;
      n.rep_time = time;
      const auto& prof = orbits_[orbit].prof;
      for (size_t c = 0; c < prof.size(); ++c)
        if (prof[c][0][time] >= depth) n.critical = static_cast<int>(c);
      if (static_cast<int>(per_depth_.size()) <= depth) per_depth_.resize(depth + 1, 0);
      n.index = per_depth_[depth]++;
      id = node_count();
      nodes_.push_back(n);
      nodes_[parent].children.push_back(id);
    }
  }
  orbits_[orbit].nodes[depth][time] = id;
  return id;
}

const PieceNode& PieceEngine::node(int id) const {
  if (id < 0 || id >= node_count()) fail(ErrorCode::Domain, "unknown piece");
  return nodes_[id];
}

int PieceEngine::depth_count(int depth) const {
  return depth < static_cast<int>(per_depth_.size()) ? per_depth_[depth] : 0;
}

std::string PieceEngine::piece_name(int id) const {
  const PieceNode& n = node(id);
  return "P" + std::to_string(n.depth) + "." + std::to_string(n.index);
}

// Path from the root: depth-0 label, then the position among siblings at each level.
std::string PieceEngine::piece_code(int id) const {
  std::vector<int> chain;
  for (int k = id; k >= 0; k = node(k).parent) chain.push_back(k);
  std::ostringstream out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const PieceNode& n = nodes_[*it];
    if (it != chain.rbegin()) out << '.';
    if (n.depth == 0) out << n.index;
    else {
      const auto& sib = nodes_[n.parent].children;
      out << (std::find(sib.begin(), sib.end(), *it) - sib.begin());
    }
  }
  return out.str();
}

}  // namespace cantor
