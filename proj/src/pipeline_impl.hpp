#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cantor/kss_nest.hpp"
#include "cantor/map_core.hpp"
#include "cantor/pipeline.hpp"
#include "cantor/puzzle.hpp"
#include "cantor/symbolic.hpp"
#include "cantor/tableau.hpp"

namespace cantor {

// State handed from stage to stage.
struct RunState {
  RunState(const Manifest& manifest, AnalyzeResult& out) : m(manifest), result(out) {}

  const Manifest& m;
  AnalyzeResult& result;
  std::optional<RationalMap> map;
  std::unique_ptr<Puzzle> puzzle;
  std::unique_ptr<SymbolicPuzzle> symbolic;
  std::optional<CritGraph> graph;
  std::optional<Nest> nest;
  int tableau_rows = 24;

  PieceEngine& engine() { return symbolic ? static_cast<PieceEngine&>(*symbolic) : puzzle->engine(); }
  void write(const std::string& name, const std::string& text);
};

// 12 significant digits, as a JSON number.
nlohmann::json num(double x);

std::string svg_polygons(const std::vector<std::pair<std::string, std::vector<Polygon>>>& layers, int size = 800);

void stage_map(RunState& s, StageResult& r);
void stage_puzzle(RunState& s, StageResult& r);
void stage_tableau(RunState& s, StageResult& r);
void stage_nest(RunState& s, StageResult& r);
void stage_geometry(RunState& s, StageResult& r);
void stage_measure(RunState& s, StageResult& r);

}  // namespace cantor
