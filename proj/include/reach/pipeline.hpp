// End-to-end construction of the achievable region: source distances,
// effective endpoints, leftover-budget circles, pruning, circular visibility
// regions, and their union.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "reach/cvr.hpp"
#include "reach/region.hpp"
#include "reach/shortest_path.hpp"

namespace reach {

class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

private:
  std::vector<std::string> issues_;
};

struct ProblemInstance {
  std::vector<ObstacleSegment> obstacles;  // pairwise disjoint
  Point source;
  double max_path_length = 0.0;
};

// Throws ValidationError listing every violated invariant: non-finite
// coordinates, degenerate or non-disjoint obstacles, source on an obstacle
// interior, or a non-positive budget.
void validate_instance(const ProblemInstance& inst, const Tolerance& tol = {});

enum class Algorithm {
  SingleDijkstra,      // one source distance map shared by every endpoint
  PerEndpointDijkstra  // re-runs Dijkstra per endpoint; kept for benchmarks
};

// The set of points reachable from the source within the path budget, as a
// region with well-organized oriented boundary loops. Union of the
// visibility region of the budget disk about the source with one circular
// visibility region per effective endpoint.
Region achievable_region(const ProblemInstance& inst, const Tolerance& tol = {},
                         Algorithm algorithm = Algorithm::SingleDijkstra);

// Ground-truth membership via the brute-force geodesic oracle, independent
// of the region construction.
bool achievable_contains(const ProblemInstance& inst, const Point& p, const Tolerance& tol = {});

// Circular visibility region of the leftover budget about a strictly
// achievable point p; every point of it must land inside the achievable
// region. Throws when the geodesic to p is not strictly below the budget.
Region residual_cvr(const ProblemInstance& inst, const Point& p, const Tolerance& tol = {});

}  // namespace reach
