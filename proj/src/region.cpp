#include "reach/region.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace reach {

Region region_from_loop(ArcPolygon loop) {
  Region r;
  loop.orientation =
      polygon_signed_area(loop) >= 0.0 ? LoopOrientation::CCW : LoopOrientation::CW;
  r.loops.push_back(std::move(loop));
  return r;
}

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

// Flattened boundary edge: a segment, or a CCW arc given by start angle and
// span on its circle.
struct FlatEdge {
  bool arc = false;
  Point s, e;
  Point c;
  double r = 0.0;
  double a0 = 0.0;
  double span = 0.0;
  Point bmin, bmax;
  int owner = 0;
};

Point arc_point(const FlatEdge& f, double offset) {
  return f.c + unit_vector(f.a0 + offset) * f.r;
}

void compute_bounds(FlatEdge& f) {
  f.bmin = {std::min(f.s.x, f.e.x), std::min(f.s.y, f.e.y)};
  f.bmax = {std::max(f.s.x, f.e.x), std::max(f.s.y, f.e.y)};
  if (f.arc) {
    // axis extremes reached inside the angular span extend the box
    for (int k = 0; k < 4; ++k) {
      const double ang = k * (kPi / 2.0);
      if (ccw_span(f.a0, ang) <= f.span) {
        const Point q = f.c + unit_vector(ang) * f.r;
        f.bmin = {std::min(f.bmin.x, q.x), std::min(f.bmin.y, q.y)};
        f.bmax = {std::max(f.bmax.x, q.x), std::max(f.bmax.y, q.y)};
      }
    }
  }
}

FlatEdge flatten_edge(const Edge& e, int owner, const Tolerance& tol) {
  FlatEdge f;
  f.owner = owner;
  if (const ArcEdge* arc = std::get_if<ArcEdge>(&e)) {
    f.arc = true;
    f.s = arc->start;
    f.e = arc->end;
    f.c = arc->circle.center;
    f.r = arc->circle.radius;
    f.a0 = polar_angle(f.c, f.s);
    f.span = arc_ccw_span(*arc, tol);
  } else {
    const LineEdge& le = std::get<LineEdge>(e);
    f.s = le.start;
    f.e = le.end;
  }
  compute_bounds(f);
  return f;
}

std::vector<FlatEdge> flatten_region(const Region& r, int owner, const Tolerance& tol) {
  std::vector<FlatEdge> out;
  for (const ArcPolygon& loop : r.loops) {
    if (loop.degenerate) continue;
    for (const Edge& e : loop.edges) out.push_back(flatten_edge(e, owner, tol));
  }
  return out;
}

Edge unflatten(const FlatEdge& f) {
  if (f.arc) return ArcEdge{Circle(f.c, f.r), f.s, f.e, arc_point(f, f.span * 0.5)};
  return LineEdge{f.s, f.e};
}

Point edge_midpoint(const FlatEdge& f) {
  return f.arc ? arc_point(f, f.span * 0.5) : (f.s + f.e) * 0.5;
}

// Unit tangent in the traversal direction at the given parameter.
Point edge_tangent(const FlatEdge& f, double offset) {
  if (f.arc) return perp(unit_vector(f.a0 + offset));
  return direction(f.s, f.e);
}

double edge_length(const FlatEdge& f) {
  return f.arc ? f.r * f.span : distance(f.s, f.e);
}

double param_max(const FlatEdge& f) { return f.arc ? f.span : 1.0; }

// Parameter of a point known to lie on (or very near) the edge's carrier;
// returns false when it falls outside the edge's extent.
bool param_of_point(const FlatEdge& f, const Point& q, double slack, double* out) {
  if (f.arc) {
    const double ang_slack = slack / std::max(f.r, 1e-12);
    double off = ccw_span(f.a0, polar_angle(f.c, q));
    if (off > f.span) {
      if (off - f.span <= ang_slack) off = f.span;
      else if (kTau - off <= ang_slack) off = 0.0;
      else return false;
    }
    *out = off;
    return true;
  }
  const Point d = f.e - f.s;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return false;
  double t = dot(q - f.s, d) / len2;
  const double t_slack = slack / std::sqrt(len2);
  if (t < -t_slack || t > 1.0 + t_slack) return false;
  *out = std::clamp(t, 0.0, 1.0);
  return true;
}

bool boxes_overlap(const FlatEdge& a, const FlatEdge& b, double pad) {
  return a.bmin.x - pad <= b.bmax.x && b.bmin.x - pad <= a.bmax.x &&
         a.bmin.y - pad <= b.bmax.y && b.bmin.y - pad <= a.bmax.y;
}

// Circle-circle intersection with a weld: nearly coincident roots collapse
// to the single tangency point.
int circle_circle_points(const Point& c1, double r1, const Point& c2, double r2, double weld,
                         Point out[2]) {
  const double d = distance(c1, c2);
  if (d <= weld) return 0;  // concentric (cocircular pairs handled separately)
  const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
  const double h2 = r1 * r1 - a * a;
  const Point u = (c2 - c1) * (1.0 / d);
  const Point base = c1 + u * a;
  if (h2 <= weld * weld) {
    if (h2 < -weld * weld) return 0;  // clear miss
    out[0] = base;                    // tangency
    return 1;
  }
  const double h = std::sqrt(h2);
  if (2.0 * h <= weld) {
    out[0] = base;
    return 1;
  }
  const Point n = perp(u);
  out[0] = base + n * h;
  out[1] = base - n * h;
  return 2;
}

// Line(a + t*d, t in R) against circle; same weld policy. Returns ray
// parameters in t_out.
int line_circle_params(const Point& a, const Point& d, const Point& c, double r, double weld,
                       double t_out[2]) {
  const double len2 = dot(d, d);
  if (len2 == 0.0) return 0;
  const Point m = a - c;
  const double B = dot(m, d) / len2;
  const double C = (dot(m, m) - r * r) / len2;
  const double disc = B * B - C;
  const double len = std::sqrt(len2);
  const double weld_t = weld / len;
  if (disc <= weld_t * weld_t) {
    if (disc < -weld_t * weld_t) return 0;
    t_out[0] = -B;
    return 1;
  }
  const double sq = std::sqrt(disc);
  if (2.0 * sq * len <= weld) {
    t_out[0] = -B;
    return 1;
  }
  t_out[0] = -B - sq;
  t_out[1] = -B + sq;
  return 2;
}

// Accumulates split parameters on both edges of a pair.
void edge_pair_splits(const FlatEdge& A, const FlatEdge& B, const Tolerance& tol,
                      std::vector<double>& pa, std::vector<double>& pb) {
  const double weld = tol.weld();
  if (!boxes_overlap(A, B, weld)) return;

  auto push_point = [&](const Point& q) {
    double ta, tb;
    if (param_of_point(A, q, weld, &ta) && param_of_point(B, q, weld, &tb)) {
      pa.push_back(ta);
      pb.push_back(tb);
    }
  };

  if (!A.arc && !B.arc) {
    SegmentIntersection si = segment_segment_intersection(A.s, A.e, B.s, B.e, tol);
    if (si.kind == SegmentIntersection::Kind::Point) {
      push_point(si.p);
    } else if (si.kind == SegmentIntersection::Kind::Overlap) {
      push_point(si.p);
      push_point(si.q);
    }
    return;
  }

  if (A.arc && B.arc) {
    const bool cocircular = distance(A.c, B.c) <= weld && std::abs(A.r - B.r) <= weld;
    if (cocircular) {
      // overlapping cocircular arcs split at each other's endpoints
      for (const Point* q : {&B.s, &B.e, &A.s, &A.e}) push_point(*q);
      return;
    }
    Point pts[2];
    const int n = circle_circle_points(A.c, A.r, B.c, B.r, weld, pts);
    for (int i = 0; i < n; ++i) push_point(pts[i]);
    return;
  }

  const FlatEdge& line = A.arc ? B : A;
  const FlatEdge& arc = A.arc ? A : B;
  const Point d = line.e - line.s;
  double ts[2];
  const int n = line_circle_params(line.s, d, arc.c, arc.r, tol.weld(), ts);
  for (int i = 0; i < n; ++i) push_point(line.s + d * ts[i]);
}

// Cuts an edge at the given parameters, keeping original endpoints exact.
void subdivide(const FlatEdge& f, std::vector<double> params, double weld,
               std::vector<FlatEdge>& out) {
  const double pmax = param_max(f);
  const double len = edge_length(f);
  if (len <= weld) return;
  const double param_weld = weld * pmax / len;

  params.push_back(0.0);
  params.push_back(pmax);
  std::sort(params.begin(), params.end());
  std::vector<double> cuts;
  for (double t : params) {
    if (cuts.empty() || t - cuts.back() > param_weld) cuts.push_back(t);
  }
  if (cuts.size() >= 2 && pmax - cuts.back() <= param_weld) {
    cuts.back() = pmax;
  } else if (cuts.back() < pmax) {
    cuts.push_back(pmax);
  }

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    FlatEdge piece = f;
    const double t0 = cuts[i];
    const double t1 = cuts[i + 1];
    if (f.arc) {
      piece.a0 = f.a0 + t0;
      piece.span = t1 - t0;
      piece.s = (t0 == 0.0) ? f.s : arc_point(f, t0);
      piece.e = (t1 == pmax) ? f.e : arc_point(f, t1);
    } else {
      const Point d = f.e - f.s;
      piece.s = (t0 == 0.0) ? f.s : f.s + d * t0;
      piece.e = (t1 == pmax) ? f.e : f.e + d * t1;
    }
    compute_bounds(piece);
    out.push_back(piece);
  }
}

// ---------------------------------------------------------------------------
// membership over flattened edges

struct EdgeSoup {
  std::vector<FlatEdge> edges;
  Point bmin{kInfD, kInfD};
  Point bmax{-kInfD, -kInfD};

  void finalize() {
    for (const FlatEdge& f : edges) {
      bmin = {std::min(bmin.x, f.bmin.x), std::min(bmin.y, f.bmin.y)};
      bmax = {std::max(bmax.x, f.bmax.x), std::max(bmax.y, f.bmax.y)};
    }
  }
};

double edge_distance(const FlatEdge& f, const Point& q) {
  if (!f.arc) return point_segment_distance(q, f.s, f.e);
  const Point v = q - f.c;
  const double rho = norm(v);
  if (rho <= 1e-300) return f.r;
  const double off = ccw_span(f.a0, polar_angle(f.c, q));
  if (off <= f.span) return std::abs(rho - f.r);
  return std::min(distance(q, f.s), distance(q, f.e));
}

// One parity ray; returns false when a crossing is too close to an edge
// endpoint or tangency to be trusted.
bool parity_ray(const EdgeSoup& soup, const Point& q, double angle, const Tolerance& tol,
                bool* odd) {
  const Point d = unit_vector(angle);
  const double guard = tol.stitch();
  int crossings = 0;
  for (const FlatEdge& f : soup.edges) {
    if (!f.arc) {
      const Point e = f.e - f.s;
      const double denom = cross(d, e);
      const double elen = norm(e);
      if (std::abs(denom) <= 1e-12 * elen) {
        if (point_segment_distance(q, f.s, f.e) <= guard) return false;  // collinear ray
        continue;
      }
      const Point m = f.s - q;
      const double t = cross(m, e) / denom;
      const double u = cross(m, d) / denom;
      if (t <= 0.0) continue;
      const double upos = u * elen;
      if (upos < -guard || upos > elen + guard) continue;
      if (upos < guard || upos > elen - guard) return false;  // too close to a vertex
      ++crossings;
    } else {
      double ts[2];
      const Point m = q - f.c;
      const double B = dot(m, d);
      const double C = dot(m, m) - f.r * f.r;
      const double disc = B * B - C;
      if (disc <= 0.0) continue;
      const double sq = std::sqrt(disc);
      if (sq <= guard) return false;  // tangential graze
      ts[0] = -B - sq;
      ts[1] = -B + sq;
      for (double t : ts) {
        if (t <= 0.0) continue;
        const Point x = q + d * t;
        const double off = ccw_span(f.a0, polar_angle(f.c, x));
        const double ang_guard = guard / std::max(f.r, 1e-12);
        if (off <= f.span) {
          if (off < ang_guard || f.span - off < ang_guard) return false;
          ++crossings;
        } else if (off - f.span < ang_guard || kTau - off < ang_guard) {
          return false;
        }
      }
    }
  }
  *odd = (crossings % 2) == 1;
  return true;
}

Location locate(const EdgeSoup& soup, const Point& q, const Tolerance& tol) {
  if (soup.edges.empty()) return Location::Outside;
  const double band = tol.eps_boundary;
  if (q.x < soup.bmin.x - band || q.x > soup.bmax.x + band || q.y < soup.bmin.y - band ||
      q.y > soup.bmax.y + band)
    return Location::Outside;

  for (const FlatEdge& f : soup.edges) {
    if (edge_distance(f, q) <= band) return Location::Boundary;
  }

  // retry with rotated rays until every crossing is clean
  for (int k = 0; k < 32; ++k) {
    const double angle = 0.5990735 + k * 2.39996322972865332;  // golden-angle steps
    bool odd = false;
    if (parity_ray(soup, q, angle, tol, &odd)) return odd ? Location::Inside : Location::Outside;
  }
  return Location::Boundary;  // hopelessly degenerate; treat as on the edge
}

// ---------------------------------------------------------------------------
// stitching kept pieces back into loops

struct NodeIndex {
  double cell = 1.0;
  std::unordered_map<std::int64_t, std::vector<int>> grid;
  std::vector<Point> pts;

  static std::int64_t key(std::int64_t gx, std::int64_t gy) {
    return (gx << 32) ^ (gy & 0xffffffffLL);
  }

  int find_or_add(const Point& p, double eps) {
    const auto gx = static_cast<std::int64_t>(std::floor(p.x / cell));
    const auto gy = static_cast<std::int64_t>(std::floor(p.y / cell));
    for (std::int64_t ix = gx - 1; ix <= gx + 1; ++ix) {
      for (std::int64_t iy = gy - 1; iy <= gy + 1; ++iy) {
        auto it = grid.find(key(ix, iy));
        if (it == grid.end()) continue;
        for (int id : it->second) {
          if (distance(pts[id], p) <= eps) return id;
        }
      }
    }
    const int id = static_cast<int>(pts.size());
    pts.push_back(p);
    grid[key(gx, gy)].push_back(id);
    return id;
  }
};

double turn_between(const Point& din, const Point& dout) {
  return std::atan2(cross(din, dout), dot(din, dout));  // (-pi, pi]
}

std::vector<ArcPolygon> stitch_loops(std::vector<FlatEdge> pieces, const Tolerance& tol) {
  const double eps = tol.stitch();
  NodeIndex nodes;
  nodes.cell = std::max(eps * 4.0, 1e-12);

  const int m = static_cast<int>(pieces.size());
  std::vector<int> from(m), to(m);
  std::vector<std::vector<int>> outgoing;
  for (int i = 0; i < m; ++i) {
    from[i] = nodes.find_or_add(pieces[i].s, eps);
    to[i] = nodes.find_or_add(pieces[i].e, eps);
  }
  outgoing.assign(nodes.pts.size(), {});
  for (int i = 0; i < m; ++i) outgoing[from[i]].push_back(i);

  std::vector<char> used(m, 0);
  std::vector<ArcPolygon> loops;

  for (int start = 0; start < m; ++start) {
    if (used[start]) continue;
    std::vector<int> chain;
    int cur = start;
    const int start_node = from[start];
    bool closed = false;
    while (true) {
      used[cur] = 1;
      chain.push_back(cur);
      const int node = to[cur];
      if (node == start_node) {
        closed = true;
        break;
      }
      // straightest continuation keeps tangent curves on their own loop
      const Point din = edge_tangent(pieces[cur], param_max(pieces[cur]));
      int best = -1;
      double best_turn = kInfD;
      for (int cand : outgoing[node]) {
        if (used[cand]) continue;
        const double turn = std::abs(turn_between(din, edge_tangent(pieces[cand], 0.0)));
        if (turn < best_turn) {
          best_turn = turn;
          best = cand;
        }
      }
      if (best < 0) break;  // open chain: drop defensively
      cur = best;
    }
    if (!closed) continue;

    ArcPolygon loop;
    for (int idx : chain) loop.edges.push_back(unflatten(pieces[idx]));
    const double signed_area = polygon_signed_area(loop, tol);
    if (std::abs(signed_area) <= 1e-12) continue;  // sliver noise
    loop.orientation = signed_area >= 0.0 ? LoopOrientation::CCW : LoopOrientation::CW;
    loops.push_back(std::move(loop));
  }
  return loops;
}

bool merge_pair(Edge& into, const Edge& next, const Tolerance& tol) {
  if (std::holds_alternative<LineEdge>(into) && std::holds_alternative<LineEdge>(next)) {
    LineEdge& a = std::get<LineEdge>(into);
    const LineEdge& b = std::get<LineEdge>(next);
    const Point da = a.end - a.start;
    const Point db = b.end - b.start;
    if (std::abs(cross(da, db)) <= tol.eps_geom * norm(da) * norm(db) && dot(da, db) > 0.0) {
      a.end = b.end;
      return true;
    }
    return false;
  }
  if (std::holds_alternative<ArcEdge>(into) && std::holds_alternative<ArcEdge>(next)) {
    ArcEdge& a = std::get<ArcEdge>(into);
    const ArcEdge& b = std::get<ArcEdge>(next);
    if (distance(a.circle.center, b.circle.center) > tol.weld() ||
        std::abs(a.circle.radius - b.circle.radius) > tol.weld())
      return false;
    const double span_a = arc_ccw_span(a, tol);
    const double span_b = arc_ccw_span(b, tol);
    const double a0 = polar_angle(a.circle.center, a.start);
    double total = span_a + span_b;
    if (total >= kTau - 1e-9) {
      a.end = a.start;  // merged into a full circle
      a.appendix = a.circle.point_at(a0 + kPi);
      return true;
    }
    a.end = b.end;
    a.appendix = a.circle.point_at(a0 + total * 0.5);
    return true;
  }
  return false;
}

void merge_maximal_edges(ArcPolygon& loop, const Tolerance& tol) {
  const std::size_t n = loop.edges.size();
  if (n < 2) return;

  // rotate so the loop starts at a genuine corner, if one exists
  std::size_t first_break = n;
  for (std::size_t i = 0; i < n; ++i) {
    Edge probe = loop.edges[(i + n - 1) % n];
    if (!merge_pair(probe, loop.edges[i], tol)) {
      first_break = i;
      break;
    }
  }
  if (first_break == n) {
    // every junction merges: the loop is one full circle (all-collinear
    // closed chains cannot happen)
    Edge acc = loop.edges[0];
    for (std::size_t i = 1; i < n; ++i) merge_pair(acc, loop.edges[i], tol);
    if (ArcEdge* arc = std::get_if<ArcEdge>(&acc)) {
      arc->end = arc->start;
      arc->appendix = arc->circle.point_at(polar_angle(arc->circle.center, arc->start) + kPi);
      loop.edges = {acc};
    }
    return;
  }

  std::vector<Edge> merged;
  for (std::size_t k = 0; k < n; ++k) {
    const Edge& e = loop.edges[(first_break + k) % n];
    if (!merged.empty() && merge_pair(merged.back(), e, tol)) continue;
    merged.push_back(e);
  }
  loop.edges = std::move(merged);
}

}  // namespace

Location membership(const Region& r, const Point& p, const Tolerance& tol) {
  EdgeSoup soup;
  soup.edges = flatten_region(r, 0, tol);
  soup.finalize();
  return locate(soup, p, tol);
}

double area(const Region& r, const Tolerance& tol) {
  double total = 0.0;
  for (const ArcPolygon& loop : r.loops) {
    if (loop.degenerate) continue;
    total += polygon_signed_area(loop, tol);
  }
  return total;
}

Bounds region_bounds(const Region& r, const Tolerance& tol) {
  Bounds b;
  for (const FlatEdge& f : flatten_region(r, 0, tol)) {
    if (!b.valid) {
      b.min = f.bmin;
      b.max = f.bmax;
      b.valid = true;
    } else {
      b.min = {std::min(b.min.x, f.bmin.x), std::min(b.min.y, f.bmin.y)};
      b.max = {std::max(b.max.x, f.bmax.x), std::max(b.max.y, f.bmax.y)};
    }
  }
  return b;
}

Region region_union(const Region& a, const Region& b, const Tolerance& tol) {
  if (a.empty()) return b;
  if (b.empty()) return a;

  EdgeSoup soup_a, soup_b;
  soup_a.edges = flatten_region(a, 0, tol);
  soup_b.edges = flatten_region(b, 1, tol);
  soup_a.finalize();
  soup_b.finalize();

  // split every edge at its crossings with the other operand
  std::vector<std::vector<double>> splits_a(soup_a.edges.size());
  std::vector<std::vector<double>> splits_b(soup_b.edges.size());
  for (std::size_t i = 0; i < soup_a.edges.size(); ++i) {
    for (std::size_t j = 0; j < soup_b.edges.size(); ++j) {
      edge_pair_splits(soup_a.edges[i], soup_b.edges[j], tol, splits_a[i], splits_b[j]);
    }
  }

  std::vector<FlatEdge> pieces;
  for (std::size_t i = 0; i < soup_a.edges.size(); ++i)
    subdivide(soup_a.edges[i], std::move(splits_a[i]), tol.weld(), pieces);
  for (std::size_t j = 0; j < soup_b.edges.size(); ++j)
    subdivide(soup_b.edges[j], std::move(splits_b[j]), tol.weld(), pieces);

  // keep boundary pieces of one operand lying outside the other; pieces on
  // coincident boundaries survive only with the union interior on their left
  const double delta = tol.probe_offset();
  auto inside_union = [&](const Point& q) {
    return locate(soup_a, q, tol) == Location::Inside || locate(soup_b, q, tol) == Location::Inside;
  };

  std::vector<FlatEdge> kept;
  std::vector<int> kept_from_boundary;
  for (const FlatEdge& piece : pieces) {
    const Point mid = edge_midpoint(piece);
    const EdgeSoup& other = piece.owner == 0 ? soup_b : soup_a;
    const Location loc = locate(other, mid, tol);
    if (loc == Location::Inside) continue;
    if (loc == Location::Outside) {
      kept.push_back(piece);
      continue;
    }
    const Point left_normal = perp(edge_tangent(piece, param_max(piece) * 0.5));
    const bool left_in = inside_union(mid + left_normal * delta);
    const bool right_in = inside_union(mid - left_normal * delta);
    if (left_in && !right_in) {
      kept_from_boundary.push_back(static_cast<int>(kept.size()));
      kept.push_back(piece);
    }
  }

  // de-duplicate coincident survivors (same piece contributed by both sides)
  {
    std::vector<char> drop(kept.size(), 0);
    const double match = tol.stitch();
    for (std::size_t ii = 0; ii < kept_from_boundary.size(); ++ii) {
      const int i = kept_from_boundary[ii];
      if (drop[i]) continue;
      for (std::size_t jj = ii + 1; jj < kept_from_boundary.size(); ++jj) {
        const int j = kept_from_boundary[jj];
        if (drop[j]) continue;
        const FlatEdge& x = kept[i];
        const FlatEdge& y = kept[j];
        if (x.arc != y.arc) continue;
        if (distance(x.s, y.s) <= match && distance(x.e, y.e) <= match &&
            distance(edge_midpoint(x), edge_midpoint(y)) <= match)
          drop[j] = 1;
      }
    }
    std::vector<FlatEdge> filtered;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (!drop[i]) filtered.push_back(kept[i]);
    }
    kept = std::move(filtered);
  }

  Region out;
  out.loops = stitch_loops(std::move(kept), tol);
  for (ArcPolygon& loop : out.loops) merge_maximal_edges(loop, tol);
  return out;
}

}  // namespace reach
