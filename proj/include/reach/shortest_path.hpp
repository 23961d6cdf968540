// Geodesic distances from the source over the visibility graph, plus the
// per-point brute-force oracle used for verification.
#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "reach/geometry.hpp"
#include "reach/visibility.hpp"

namespace reach {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct DistanceMap {
  int source = -1;
  std::vector<double> dist;  // +inf for unreachable nodes
  std::vector<int> pred;     // -1 at the source and unreachable nodes
};

// Binary-heap single-source shortest paths.
DistanceMap dijkstra(const VisibilityGraph& g, int source_index);

// Endpoint nodes with dist strictly below l; extras are never included.
std::vector<int> effective_endpoints(const VisibilityGraph& g, const DistanceMap& dm, double l);

// C(e, l - dist[e]) when the leftover budget is strictly positive, else
// nullopt (invalid circle; also covers unreachable endpoints).
std::optional<Circle> circle_for_endpoint(const VisibilityGraph& g, const DistanceMap& dm,
                                          int endpoint, double l);

// Brute-force geodesic: builds the visibility graph augmented with {s, p}
// and runs Dijkstra. +inf when p is unreachable. Throws when s or p lies on
// an obstacle's relative interior.
double geodesic_distance(std::span<const ObstacleSegment> obstacles, const Point& s,
                         const Point& p, const Tolerance& tol = {});

struct ControlPoint {
  int anchor = -1;    // index into the anchors list
  double total = kInf;  // geodesic distance from the source to the query point
};

// Among anchors visible from p, the one minimizing anchor_dist[a] +
// distance(a, p); ties break toward the lowest anchor index. anchor_dist
// holds the source geodesic distance of each anchor, aligned with anchors.
// This answers the shortest-path-map region query pointwise.
std::optional<ControlPoint> control_point(const Point& p, std::span<const Point> anchors,
                                          std::span<const double> anchor_dist,
                                          std::span<const ObstacleSegment> obstacles,
                                          const Tolerance& tol = {});

}  // namespace reach
