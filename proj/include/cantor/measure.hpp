#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/engine.hpp"
#include "cantor/geometry.hpp"
#include "cantor/map_core.hpp"
#include "cantor/tableau.hpp"

namespace cantor {

class Puzzle;

struct DensityProbe {
  int piece = -1;
  int depth = 0;
  double area_estimate = 0;
  double julia_fraction = 0;  // non-escaping fraction at iter_cap, an upper estimate
  int sample_count = 0;       // samples that fell inside the region
  int bounded_count = 0;
  double halfwidth = 0;       // 95% Wilson half-width
};

// Uniform samples of the polygon's bounding box, kept when inside the polygon.
DensityProbe density_probe_region(const RationalMap& map, const Polygon& region, int samples, int iter_cap,
                                  std::uint64_t seed);
DensityProbe density_probe(Puzzle& pz, int piece, int samples, int iter_cap, std::uint64_t seed);
// Probes of P_0(x) ... P_max_depth(x) for x = orbit point 0.
std::vector<DensityProbe> density_chain(Puzzle& pz, int orbit, int max_depth, int samples, int iter_cap,
                                        std::uint64_t seed);

enum class PointClassId { X1, X2, X3, X4, Undetermined };
const char* point_class_name(PointClassId c);

struct PointClass {
  int orbit = -1;
  PointClassId id = PointClassId::Undetermined;
  int preimage_time = -1;  // X1: f^j(x) is a Julia critical point at caps
  std::vector<int> crit, crit_n, crit_p, crit_r, crit_en, crit_ep, crit_er;
  std::string reason;
  int depth_cap = 0, time_cap = 0;
};

struct PointCaps {
  int depth = 24;
  int time = 512;
};

PointClass classify_point(const PieceEngine& e, const CritGraph& g, int orbit, PointCaps caps = {});

struct FirstReturns {
  int case_id = 0;                 // which of the four cases produced the times
  int p0 = -1;                     // depth-0 piece the times land in
  std::vector<int> times;          // i_n
  std::vector<long long> degrees;  // deg(f^{i_n} : P_{i_n}(x) -> P_0)
  long long bound = 0;             // combinatorial bound D
  std::string detail;
  bool ok() const;
};

// First-return times and degrees for x in X2 or X3; throws Cap when nothing is found.
FirstReturns first_return_degrees(PieceEngine& e, const CritGraph& g, const PointClass& pc, PointCaps caps = {});

std::string format_density(const std::vector<DensityProbe>& rows);
std::string format_point_class(const PointClass& pc, const FirstReturns* fr);

}  // namespace cantor
