#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cantor/geometry.hpp"

namespace cantor {

// Scalar field sampled at the vertices of a uniform grid.
struct VertexGrid {
  double x0 = 0, y0 = 0, h = 1;
  int nx = 0, ny = 0;  // vertices per row / column
  std::vector<double> value;

  double at(int i, int j) const { return value[static_cast<size_t>(j) * nx + i]; }
  cplx point(int i, int j) const { return {x0 + i * h, y0 + j * h}; }
  bool locate(cplx z, int& i, int& j) const;

  static VertexGrid sample(const Box& box, int cells, const std::function<double(cplx)>& f);
};

// 4-connected components of {value < level}; labels are -1 outside.
std::vector<int> label_below(const VertexGrid& g, double level, int& count);

// Closed contour of {value = level} around the component with the given label.
Polygon component_contour(const VertexGrid& g, const std::vector<int>& labels, int label, double level);

Box component_box(const VertexGrid& g, const std::vector<int>& labels, int label);

}  // namespace cantor
