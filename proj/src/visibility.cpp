#include "reach/visibility.hpp"

namespace reach {

bool on_segment_interior(const Point& q, const Point& a, const Point& b, const Tolerance& tol) {
  if (point_segment_distance(q, a, b) > tol.eps_geom) return false;
  return distance(q, a) > tol.eps_geom && distance(q, b) > tol.eps_geom;
}

namespace {

// Proper interior crossing of the open segment (p,q) with obstacle [a,b].
// Any touch within eps_geom of an endpoint or a collinear overlap is a graze
// and does not block.
bool blocks(const Point& p, const Point& q, const Point& a, const Point& b, const Tolerance& tol) {
  const Point pq = q - p;
  const Point ab = b - a;
  const double pq_len = norm(pq);
  const double ab_len = norm(ab);
  if (ab_len <= tol.eps_geom) return false;

  // signed distances of each endpoint from the other segment's line
  const double da = cross(pq, a - p) / pq_len;
  const double db = cross(pq, b - p) / pq_len;
  const double dp = cross(ab, p - a) / ab_len;
  const double dq = cross(ab, q - a) / ab_len;
  const double eps = tol.eps_geom;

  const bool ab_straddles = (da > eps && db < -eps) || (da < -eps && db > eps);
  const bool pq_straddles = (dp > eps && dq < -eps) || (dp < -eps && dq > eps);
  return ab_straddles && pq_straddles;
}

}  // namespace

bool visible(const Point& p, const Point& q, std::span<const ObstacleSegment> obstacles,
             const Tolerance& tol) {
  if (distance(p, q) <= tol.eps_geom) return true;
  for (const ObstacleSegment& o : obstacles) {
    if (blocks(p, q, o.a, o.b, tol)) return false;
  }
  return true;
}

VisibilityGraph build_visibility_graph(std::span<const ObstacleSegment> obstacles,
                                       std::span<const Point> extras, const Tolerance& tol) {
  VisibilityGraph g;
  g.endpoint_count = static_cast<int>(2 * obstacles.size());
  g.nodes.reserve(obstacles.size() * 2 + extras.size());
  for (const ObstacleSegment& o : obstacles) {
    g.nodes.push_back(o.a);
    g.nodes.push_back(o.b);
  }
  for (const Point& e : extras) {
    for (const ObstacleSegment& o : obstacles) {
      if (on_segment_interior(e, o.a, o.b, tol))
        throw GeometryError("point on obstacle interior");
    }
    g.nodes.push_back(e);
  }

  const int n = g.node_count();
  g.adjacency.assign(n, {});
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (distance(g.nodes[u], g.nodes[v]) <= tol.eps_geom) continue;  // coincident nodes
      if (!visible(g.nodes[u], g.nodes[v], obstacles, tol)) continue;
      const double w = distance(g.nodes[u], g.nodes[v]);
      g.adjacency[u].push_back({v, w});
      g.adjacency[v].push_back({u, w});
    }
  }
  return g;
}

std::vector<int> visible_anchors(const Point& p, std::span<const Point> anchors,
                                 std::span<const ObstacleSegment> obstacles,
                                 const Tolerance& tol) {
  std::vector<int> out;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (visible(p, anchors[i], obstacles, tol)) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace reach
