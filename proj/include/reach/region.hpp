// Boolean union of circular-arc polygons, point membership, and exact area.
#pragma once

#include <vector>

#include "reach/geometry.hpp"

namespace reach {

// A set of oriented boundary loops: CCW loops bound filled area, CW loops
// bound holes. Loops may touch only at isolated points.
struct Region {
  std::vector<ArcPolygon> loops;

  bool empty() const { return loops.empty(); }
};

Region region_from_loop(ArcPolygon loop);

enum class Location { Inside, Boundary, Outside };

// Point-set union. Input boundary pieces keep their traversal direction, so
// output loops come out correctly oriented; adjacent collinear or cocircular
// pieces are merged into maximal edges.
Region region_union(const Region& a, const Region& b, const Tolerance& tol = {});

// Ray-crossing parity generalized to arc edges. Boundary when p lies within
// eps_boundary of any edge.
Location membership(const Region& r, const Point& p, const Tolerance& tol = {});

// Signed-area sum over loops: shoelace plus circular-segment corrections;
// holes subtract.
double area(const Region& r, const Tolerance& tol = {});

// Axis-aligned bounds of all loop edges (arcs included exactly).
struct Bounds {
  Point min{0.0, 0.0};
  Point max{0.0, 0.0};
  bool valid = false;
};
Bounds region_bounds(const Region& r, const Tolerance& tol = {});

}  // namespace reach
