#include "reach/shortest_path.hpp"

#include <queue>

namespace reach {

DistanceMap dijkstra(const VisibilityGraph& g, int source_index) {
  const int n = g.node_count();
  if (source_index < 0 || source_index >= n) throw GeometryError("dijkstra: source index out of range");

  DistanceMap dm;
  dm.source = source_index;
  dm.dist.assign(n, kInf);
  dm.pred.assign(n, -1);
  dm.dist[source_index] = 0.0;

  using Item = std::pair<double, int>;  // (distance, node)
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({0.0, source_index});
  std::vector<char> done(n, 0);

  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const auto& [v, w] : g.adjacency[u]) {
      const double nd = d + w;
      if (nd < dm.dist[v]) {
        dm.dist[v] = nd;
        dm.pred[v] = u;
        heap.push({nd, v});
      }
    }
  }
  return dm;
}

std::vector<int> effective_endpoints(const VisibilityGraph& g, const DistanceMap& dm, double l) {
  std::vector<int> out;
  for (int i = 0; i < g.endpoint_count; ++i) {
    if (dm.dist[i] < l) out.push_back(i);
  }
  return out;
}

std::optional<Circle> circle_for_endpoint(const VisibilityGraph& g, const DistanceMap& dm,
                                          int endpoint, double l) {
  if (endpoint < 0 || endpoint >= g.endpoint_count)
    throw GeometryError("circle_for_endpoint: not an endpoint node");
  const double leftover = l - dm.dist[endpoint];
  if (!(leftover > 0.0)) return std::nullopt;
  return Circle(g.nodes[endpoint], leftover);
}

double geodesic_distance(std::span<const ObstacleSegment> obstacles, const Point& s,
                         const Point& p, const Tolerance& tol) {
  const Point extras[2] = {s, p};
  const VisibilityGraph g = build_visibility_graph(obstacles, extras, tol);
  const int s_node = g.endpoint_count;
  const int p_node = g.endpoint_count + 1;
  const DistanceMap dm = dijkstra(g, s_node);
  return dm.dist[p_node];
}

std::optional<ControlPoint> control_point(const Point& p, std::span<const Point> anchors,
                                          std::span<const double> anchor_dist,
                                          std::span<const ObstacleSegment> obstacles,
                                          const Tolerance& tol) {
  if (anchors.size() != anchor_dist.size())
    throw GeometryError("control_point: anchors and distances are misaligned");
  std::optional<ControlPoint> best;
  for (int idx : visible_anchors(p, anchors, obstacles, tol)) {
    if (anchor_dist[idx] == kInf) continue;
    const double total = anchor_dist[idx] + distance(anchors[idx], p);
    if (!best || total < best->total) best = ControlPoint{idx, total};
  }
  return best;
}

}  // namespace reach
