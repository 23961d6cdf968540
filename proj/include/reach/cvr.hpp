// Circular visibility regions: circle-based obstacle pruning and the
// rotational plane sweep that traces the region boundary.
#pragma once

#include <span>
#include <vector>

#include "reach/geometry.hpp"

namespace reach {

// Sub-segments of the obstacles inside the closed disk of c, ids preserved.
// A cheap bounding-rectangle test rejects far obstacles before clipping.
std::vector<ObstacleSegment> prune_obstacles(const Circle& c,
                                             std::span<const ObstacleSegment> obstacles,
                                             const Tolerance& tol = {});

// Region of the closed disk of c visible from its center, as one closed CCW
// arc polygon. Candidates must already lie inside the disk (the output of
// prune_obstacles). The boundary is built by sweeping a ray counter-clockwise
// around the center and tracking the nearest crossing obstacle; it consists
// of circle arcs, obstacle sub-segments, and radial shadow segments.
//
// Obstacles whose endpoints subtend the same polar angle about the center
// block only a zero-width ray and are skipped; an obstacle endpoint at the
// center is treated the same way. Throws when the center lies strictly on a
// candidate's relative interior. A radius below eps_geom yields a full
// circle flagged degenerate.
ArcPolygon construct_cvr(const Circle& c, std::span<const ObstacleSegment> candidates,
                         const Tolerance& tol = {});

}  // namespace reach
