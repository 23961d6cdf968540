// Mutual visibility among line-segment obstacles and the visibility graph
// over obstacle endpoints plus extra points.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "reach/geometry.hpp"

namespace reach {

// True iff the open sightline (p,q) does not properly cross the relative
// interior of any obstacle. Grazing an obstacle endpoint or running
// collinearly along an obstacle does not block; p == q is visible.
bool visible(const Point& p, const Point& q, std::span<const ObstacleSegment> obstacles,
             const Tolerance& tol = {});

// Weighted graph over obstacle endpoints followed by extra points. An edge
// (u,v) exists iff the nodes are mutually visible; its weight is their
// Euclidean distance.
struct VisibilityGraph {
  std::vector<Point> nodes;                               // 2n endpoints, then extras
  std::vector<std::vector<std::pair<int, double>>> adjacency;
  int endpoint_count = 0;

  int node_count() const { return static_cast<int>(nodes.size()); }
};

// Endpoints enter in obstacle order (a then b). Throws GeometryError when an
// extra point lies strictly on an obstacle's relative interior.
VisibilityGraph build_visibility_graph(std::span<const ObstacleSegment> obstacles,
                                       std::span<const Point> extras,
                                       const Tolerance& tol = {});

// Indices of anchors visible from p.
std::vector<int> visible_anchors(const Point& p, std::span<const Point> anchors,
                                 std::span<const ObstacleSegment> obstacles,
                                 const Tolerance& tol = {});

// True iff q lies on the relative interior of [a,b] (within eps_geom of the
// segment but not of either endpoint).
bool on_segment_interior(const Point& q, const Point& a, const Point& b,
                         const Tolerance& tol = {});

}  // namespace reach
