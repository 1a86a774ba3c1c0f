#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cantor/engine.hpp"
#include "cantor/geometry.hpp"
#include "cantor/grid.hpp"
#include "cantor/map_core.hpp"

namespace cantor {

// Green function of the basin of infinity for a polynomial; 0 on the filled Julia set.
double green(const Poly& f, cplx z, int max_iter = 400);

struct PuzzleOptions {
  std::optional<int> n0;           // forced N0; chosen automatically otherwise
  int grid_cells = 2048;           // depth-0 labelling resolution across the bounding box
  int piece_cells = 64;            // local grid for deeper pieces
  int max_n0 = 40;
};

struct CriticalInfo {
  CriticalPoint point;
  double green_value = 0;  // 0 when the orbit stays bounded at working precision
  int piece = -1;          // depth-0 piece, -1 for escaping points
};

struct PieceGeometry {
  Polygon boundary;
  Box box;
  double h = 0;  // grid spacing used for the boundary
};


class Puzzle {
 public:
  Puzzle(const RationalMap& map, PuzzleOptions options = {});
  ~Puzzle();
  Puzzle(const Puzzle&) = delete;
  Puzzle& operator=(const Puzzle&) = delete;

  const RationalMap& map() const { return map_; }
  int degree() const { return map_.degree(); }
  double g0() const { return g0_; }
  int n0() const { return n0_; }
  double level(int depth) const;
  double cell_size() const { return depth0_.h; }
  int depth0_count() const { return depth0_count_; }
  const std::vector<CriticalInfo>& critical() const { return critical_; }
  // Julia critical points, in the order used for orbit ids 0..k-1.
  const std::vector<int>& julia_critical() const { return julia_critical_; }
  double max_derivative() const { return max_derivative_; }

  // Depth-0 piece of a point: >= 0 piece, -1 outside every piece, -2 too close to a boundary.
  int locate0(cplx z) const;

  // Orbit registry. Orbits are stored at the precision in force when they were made.
  int add_forward_orbit(const BigComplex& z, int length);
  int add_julia_orbit(int length, std::uint64_t seed);
  int orbit_count() const;
  int orbit_length(int orbit) const;
  const BigComplex& orbit_point(int orbit, int time) const;
  cplx orbit_approx(int orbit, int time) const;
  int orbit_label(int orbit, int time) const;
  // First time the orbit leaves the depth-0 pieces or meets an ambiguous point.
  int orbit_clean_length(int orbit) const;
  int critical_orbit(int julia_index) const { return julia_index; }
  unsigned bits() const { return bits_; }
  // Precision able to follow orbits of the given length.
  unsigned bits_for_length(int length) const;
  // Extends the critical orbits so they hold at least `length` points.
  void ensure_critical_length(int length);

  // Largest n with P_n(a) = P_n(b), -1 when the depth-0 pieces differ.
  // Values are lower bounds when an orbit runs out.
  int agreement(int orbit_a, int time_a, int orbit_b, int time_b) const;
  // Agreement of (orbit, time) with the Julia critical point (q = 0) or its image (q = 1).
  int critical_agreement(int orbit, int time, int julia_index, int q) const;

  // Piece index.
  int piece_of(int orbit, int time, int depth);
  const PieceNode& node(int id) const;
  int node_count() const;
  std::string piece_name(int id) const;
  std::string piece_code(int id) const;
  int depth0_node(int label) const { return label; }
  PieceEngine& engine();
  const PieceEngine& engine() const;

  // Geometry, built on demand from the parent's grid.
  const PieceGeometry& geometry(int node_id);
  bool has_geometry(int node_id) const;

  struct Impl;

 private:
  int register_orbit(std::vector<BigComplex> pts);
  int depth0_label_at(int i, int j) const;
  int locate0_fine(cplx z) const;

  RationalMap map_;
  PuzzleOptions options_;
  double g0_ = 0;
  int n0_ = 0;
  unsigned bits_ = 128;
  double max_derivative_ = 1;
  int depth0_count_ = 0;
  VertexGrid depth0_;
  std::vector<int> depth0_labels_;
  std::vector<CriticalInfo> critical_;
  std::vector<int> julia_critical_;
  std::unique_ptr<Impl> impl_;
};

struct PuzzleCheck {
  int max_depth = 0;
  int samples = 0;
  int pieces = 0;                 // distinct pieces whose geometry was built
  int nesting_tests = 0, nesting_failures = 0;
  int disjoint_tests = 0, disjoint_failures = 0;
  int image_tests = 0, image_failures = 0;
  std::vector<double> max_diameter;  // per depth, over the sampled pieces
  bool shrinking = false;
  std::vector<std::string> failures;  // first few offenders
  bool pass() const {
    return nesting_failures == 0 && disjoint_failures == 0 && image_failures == 0 && shrinking;
  }
};

// Nesting, disjointness, image law and shrinking on the pieces met by
// `samples` random Julia points, depths 0..max_depth.
PuzzleCheck check_puzzle(Puzzle& pz, int max_depth, int samples, std::uint64_t seed);

}  // namespace cantor
