#include "reach/cvr.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "reach/visibility.hpp"

namespace reach {

std::vector<ObstacleSegment> prune_obstacles(const Circle& c,
                                             std::span<const ObstacleSegment> obstacles,
                                             const Tolerance& tol) {
  const double r = c.radius;
  const double xmin = c.center.x - r, xmax = c.center.x + r;
  const double ymin = c.center.y - r, ymax = c.center.y + r;

  std::vector<ObstacleSegment> out;
  for (const ObstacleSegment& o : obstacles) {
    // bounding-rectangle prefilter
    if (std::max(o.a.x, o.b.x) < xmin || std::min(o.a.x, o.b.x) > xmax ||
        std::max(o.a.y, o.b.y) < ymin || std::min(o.a.y, o.b.y) > ymax)
      continue;
    if (auto clipped = clip_segment_to_circle(o.a, o.b, c, tol)) {
      out.push_back({clipped->first, clipped->second, o.id});
    }
  }
  return out;
}

namespace {

struct Candidate {
  Point a, b;            // clipped segment
  Point enter_pt, exit_pt;
  double enter_angle = 0.0, exit_angle = 0.0;
  bool wraps = false;    // angular interval crosses the sweep start (angle 0)
};

struct SweepEvent {
  double angle;
  double dist;  // endpoint distance from the center; nearer events first on ties
  int cand;
  bool enter;
};

// Ray from `center` at direction d against the line through [a,b]:
// center + t*d == a + u*(b-a).
struct RayHit {
  double t = -1.0;
  double u = 0.0;
  bool valid = false;
};

RayHit ray_line_hit(const Point& center, const Point& d, const Point& a, const Point& b) {
  RayHit h;
  const Point e = b - a;
  const double denom = cross(d, e);
  if (std::abs(denom) < 1e-14 * norm(e)) return h;  // near-radial segment
  const Point m = a - center;
  h.t = cross(m, e) / denom;
  h.u = cross(m, d) / denom;
  h.valid = true;
  return h;
}

struct SweepContext {
  Point center;
  Point dir{1.0, 0.0};
  const std::vector<Candidate>* cands = nullptr;

  // Distance along the current ray at which the candidate is crossed. Active
  // candidates always cross the ray; disjointness keeps the relative order
  // stable between endpoint events.
  double ray_distance(int idx) const {
    const Candidate& cd = (*cands)[idx];
    const RayHit h = ray_line_hit(center, dir, cd.a, cd.b);
    if (h.valid && h.t > 0.0) return h.t;
    return distance(center, (cd.a + cd.b) * 0.5);
  }
};

struct ActiveCompare {
  SweepContext* ctx;
  bool operator()(int a, int b) const {
    if (a == b) return false;
    const double ta = ctx->ray_distance(a);
    const double tb = ctx->ray_distance(b);
    if (ta != tb) return ta < tb;
    return a < b;
  }
};

struct Station {
  Point pt;
  bool arc_follows = false;  // boundary from this vertex to the next is a circle arc
};

ArcPolygon full_circle_polygon(const Circle& c, bool degenerate) {
  ArcPolygon poly;
  const Point start = c.center + Point{c.radius, 0.0};
  const Point antipode = c.center - Point{c.radius, 0.0};
  poly.edges.push_back(ArcEdge{c, start, start, antipode});
  poly.degenerate = degenerate;
  return poly;
}

}  // namespace

ArcPolygon construct_cvr(const Circle& c, std::span<const ObstacleSegment> candidates,
                         const Tolerance& tol) {
  const Point p = c.center;
  const double r = c.radius;
  if (r < tol.eps_geom) return full_circle_polygon(c, /*degenerate=*/true);

  const double on_circle_eps = tol.eps_geom * (1.0 + r);

  std::vector<Candidate> cands;
  cands.reserve(candidates.size());
  for (const ObstacleSegment& o : candidates) {
    if (distance(o.a, o.b) <= tol.eps_geom) continue;
    // a segment incident at the center subtends a single ray; grazing along
    // it is allowed, so it blocks nothing
    if (distance(p, o.a) <= tol.eps_geom || distance(p, o.b) <= tol.eps_geom) continue;
    if (on_segment_interior(p, o.a, o.b, tol))
      throw GeometryError("cvr center lies on a candidate obstacle");

    Candidate cd;
    cd.a = o.a;
    cd.b = o.b;
    const double aa = polar_angle(p, o.a);
    const double ab = polar_angle(p, o.b);
    const double span_ab = ccw_span(aa, ab);
    constexpr double kAngleEps = 1e-12;
    // endpoints at equal polar angles (or spanning exactly pi, which would
    // put the center on the segment) block a zero-width ray only
    if (span_ab <= kAngleEps || kTau - span_ab <= kAngleEps || std::abs(span_ab - kPi) <= kAngleEps)
      continue;
    if (span_ab < kPi) {
      cd.enter_pt = o.a;
      cd.exit_pt = o.b;
      cd.enter_angle = aa;
      cd.exit_angle = ab;
    } else {
      cd.enter_pt = o.b;
      cd.exit_pt = o.a;
      cd.enter_angle = ab;
      cd.exit_angle = aa;
    }
    cd.wraps = cd.exit_angle < cd.enter_angle;
    cands.push_back(cd);
  }

  if (cands.empty()) return full_circle_polygon(c, false);

  std::vector<SweepEvent> events;
  events.reserve(cands.size() * 2);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const Candidate& cd = cands[i];
    events.push_back({cd.enter_angle, distance(p, cd.enter_pt), static_cast<int>(i), true});
    events.push_back({cd.exit_angle, distance(p, cd.exit_pt), static_cast<int>(i), false});
  }
  std::sort(events.begin(), events.end(), [](const SweepEvent& x, const SweepEvent& y) {
    if (x.angle != y.angle) return x.angle < y.angle;
    if (x.dist != y.dist) return x.dist < y.dist;  // nearer endpoint first
    if (x.cand != y.cand) return x.cand < y.cand;
    return x.enter < y.enter;
  });

  SweepContext ctx;
  ctx.center = p;
  ctx.cands = &cands;
  std::set<int, ActiveCompare> active{ActiveCompare{&ctx}};
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].wraps) active.insert(static_cast<int>(i));
  }

  // Intersection of the current event ray with the candidate behind the
  // event endpoint. Falls back to a direct scan over the active set when the
  // expected candidate does not span the ray numerically.
  auto shadow_point = [&](int behind, int skip) -> Point {
    const Candidate& cd = cands[behind];
    RayHit h = ray_line_hit(p, ctx.dir, cd.a, cd.b);
    if (h.valid && h.t > 0.0 && h.u >= -1e-6 && h.u <= 1.0 + 1e-6) {
      const double u = std::clamp(h.u, 0.0, 1.0);
      return cd.a + (cd.b - cd.a) * u;
    }
    double best_t = std::numeric_limits<double>::infinity();
    Point best{};
    bool found = false;
    for (int idx : active) {
      if (idx == skip) continue;
      const Candidate& other = cands[idx];
      const RayHit oh = ray_line_hit(p, ctx.dir, other.a, other.b);
      if (!oh.valid || oh.t <= 0.0 || oh.u < -1e-6 || oh.u > 1.0 + 1e-6) continue;
      if (oh.t < best_t) {
        best_t = oh.t;
        best = other.a + (other.b - other.a) * std::clamp(oh.u, 0.0, 1.0);
        found = true;
      }
    }
    if (!found) {
      // nothing spans the ray after all: the circle is the backdrop
      return p + ctx.dir * r;
    }
    return best;
  };

  std::vector<Station> stations;
  auto emit = [&](const Point& q, bool arc) { stations.push_back({q, arc}); };

  for (const SweepEvent& ev : events) {
    ctx.dir = unit_vector(ev.angle);
    const Candidate& cd = cands[ev.cand];
    const Point e_pt = ev.enter ? cd.enter_pt : cd.exit_pt;
    const bool on_circle = std::abs(ev.dist - r) <= on_circle_eps;

    if (ev.enter) {
      active.insert(ev.cand);
      if (*active.begin() != ev.cand) continue;  // stays hidden
      if (active.size() > 1) {
        const int behind = *std::next(active.begin());
        emit(shadow_point(behind, ev.cand), false);
        emit(e_pt, false);
      } else if (!on_circle) {
        emit(ray_circle_exit(p, e_pt, c), false);  // arc ends here
        emit(e_pt, false);
      } else {
        emit(e_pt, false);  // arc ends exactly at the endpoint
      }
    } else {
      const bool was_front = (*active.begin() == ev.cand);
      if (was_front) {
        if (active.size() > 1) {
          const int behind = *std::next(active.begin());
          emit(e_pt, false);
          emit(shadow_point(behind, ev.cand), false);
        } else if (!on_circle) {
          emit(e_pt, false);
          emit(ray_circle_exit(p, e_pt, c), true);  // arc opens here
        } else {
          emit(e_pt, true);
        }
      }
      active.erase(ev.cand);
    }
  }

  if (stations.empty()) return full_circle_polygon(c, false);

  // weld coincident consecutive stations (angle ties produce zero-length
  // radial or arc pieces)
  const double weld = tol.weld();
  std::vector<Station> st;
  for (const Station& s : stations) {
    if (!st.empty() && distance(st.back().pt, s.pt) <= weld) {
      st.back().arc_follows = s.arc_follows;
    } else {
      st.push_back(s);
    }
  }
  while (st.size() > 1 && distance(st.front().pt, st.back().pt) <= weld) {
    st.pop_back();  // the closing edge back->front is zero-length
  }
  if (st.size() < 2) throw GeometryError("cvr sweep produced a degenerate boundary");

  auto snap_to_circle = [&](const Point& q) {
    const double d = distance(p, q);
    return d > 0.0 ? p + (q - p) * (r / d) : q;
  };

  ArcPolygon poly;
  const std::size_t m = st.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Station& u = st[i];
    const Station& v = st[(i + 1) % m];
    if (u.arc_follows) {
      const Point s0 = snap_to_circle(u.pt);
      const Point s1 = snap_to_circle(v.pt);
      const double a0 = polar_angle(p, s0);
      const double span = ccw_span(a0, polar_angle(p, s1));
      poly.edges.push_back(ArcEdge{c, s0, s1, c.point_at(a0 + span * 0.5)});
    } else {
      poly.edges.push_back(LineEdge{u.pt, v.pt});
    }
  }
  return poly;
}

}  // namespace reach
