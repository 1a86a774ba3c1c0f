#pragma once

#include <string>
#include <vector>

#include "cantor/engine.hpp"

namespace cantor {

// Combinatorial model of a cubic with one escaping critical point: two
// depth-0 pieces, W (mapped univalently) and V (degree 2 around c). Orbits are
// itineraries over 'W', '-', '+', where the sign tells the side of c inside V,
// and 'c' marks the critical point itself.
class SymbolicPuzzle : public PieceEngine {
 public:
  // itinerary of f(c), f^2(c), ...
  explicit SymbolicPuzzle(const std::string& critical_itinerary);
  int add_itinerary(const std::string& symbols);
  const std::string& itinerary(int orbit) const { return symbols_.at(orbit); }

 protected:
  bool same_branch(int oa, int ta, int ob, int tb, int c) const override;

 private:
  std::vector<std::string> symbols_;
};

// Itinerary of f(c) built from a kneading map. Return times S_0 = |seed|,
// S_{j+1} = S_j + S_{max(0, j-lag)}; each new block copies the first
// S_q - 1 symbols and then leaves through the other side of c (a W there is
// replaced by '+'). Seed "W" with lag 2 gives Fibonacci return times.
std::string kneading_itinerary(const std::string& seed, int lag, int length);

}  // namespace cantor
