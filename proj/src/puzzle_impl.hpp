#pragma once

#include <map>

#include "cantor/puzzle.hpp"

namespace cantor {

class PuzzleEngine : public PieceEngine {
 public:
  explicit PuzzleEngine(const Puzzle::Impl& impl) : impl_(impl) {}

 protected:
  bool same_branch(int oa, int ta, int ob, int tb, int c) const override;

 private:
  const Puzzle::Impl& impl_;
};

struct Puzzle::Impl {
  Impl() : engine(*this) {}
  Poly poly;
  std::vector<int> local_degree;           // per Julia critical point
  std::vector<BigComplex> julia_points;
  std::vector<std::vector<cplx>> taylor;  // Taylor coefficients at each Julia critical point
  std::vector<std::vector<BigComplex>> points;  // per orbit, parallel to the engine's orbits
  std::vector<std::vector<cplx>> approx;
  PuzzleEngine engine;
  std::map<int, PieceGeometry> geometry;
  std::vector<cplx> depth0_seed;           // an interior vertex of each depth-0 piece
  int critical_length = 0;
};

}  // namespace cantor
