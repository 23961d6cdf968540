#include "reach/geometry.hpp"

#include <algorithm>

namespace reach {

double distance(const Point& p, const Point& q) { return std::hypot(p.x - q.x, p.y - q.y); }

Point direction(const Point& p, const Point& q) {
  const double len = distance(p, q);
  if (len == 0.0) throw GeometryError("degenerate direction: coincident points");
  return (q - p) * (1.0 / len);
}

double polar_angle(const Point& center, const Point& p) {
  const double dx = p.x - center.x;
  const double dy = p.y - center.y;
  if (dx == 0.0 && dy == 0.0) throw GeometryError("degenerate angle");
  double a = std::atan2(dy, dx);
  if (a < 0.0) a += kTau;
  if (a >= kTau) a = 0.0;  // guard against rounding of tiny negative angles
  return a;
}

double ccw_span(double from, double to) {
  double s = std::fmod(to - from, kTau);
  if (s < 0.0) s += kTau;
  if (s >= kTau) s = 0.0;
  return s;
}

double arc_ccw_span(const ArcEdge& arc, const Tolerance& tol) {
  const Point& c = arc.circle.center;
  const double a0 = polar_angle(c, arc.start);
  const double a1 = polar_angle(c, arc.end);
  double span = ccw_span(a0, a1);
  // start == end means a full circle, not an empty arc
  if (span < tol.eps_geom && distance(arc.start, arc.end) <= tol.weld()) span = kTau;
  return span;
}

double polygon_signed_area(const ArcPolygon& loop, const Tolerance& tol) {
  double area2 = 0.0;  // twice the signed area
  for (const Edge& e : loop.edges) {
    const Point& s = edge_start(e);
    const Point& t = edge_end(e);
    area2 += cross(s, t);
    if (const ArcEdge* arc = std::get_if<ArcEdge>(&e)) {
      const double r = arc->circle.radius;
      const double span = arc_ccw_span(*arc, tol);
      area2 += r * r * span + cross(arc->circle.center, t - s);
    }
  }
  return 0.5 * area2;
}

void validate_polygon(const ArcPolygon& loop, const Tolerance& tol) {
  if (loop.edges.empty()) throw GeometryError("polygon has no edges");
  const std::size_t n = loop.edges.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Edge& e = loop.edges[i];
    const Edge& next = loop.edges[(i + 1) % n];
    if (distance(edge_end(e), edge_start(next)) > tol.stitch())
      throw GeometryError("polygon is not closed");
    if (const ArcEdge* arc = std::get_if<ArcEdge>(&e)) {
      const Point& c = arc->circle.center;
      const double r = arc->circle.radius;
      for (const Point* p : {&arc->start, &arc->end, &arc->appendix}) {
        if (std::abs(distance(c, *p) - r) > tol.weld())
          throw GeometryError("arc point is not on its circle");
      }
      const double span = arc_ccw_span(*arc, tol);
      const double off = ccw_span(polar_angle(c, arc->start), polar_angle(c, arc->appendix));
      if (span < kTau - tol.eps_geom && off > span + 1e-6)
        throw GeometryError("arc appendix is outside the arc span");
    } else {
      const LineEdge& le = std::get<LineEdge>(e);
      if (distance(le.start, le.end) <= tol.eps_geom)
        throw GeometryError("degenerate line edge");
    }
  }
}

SegmentIntersection segment_segment_intersection(const Point& a1, const Point& a2,
                                                 const Point& b1, const Point& b2,
                                                 const Tolerance& tol) {
  SegmentIntersection out;
  const Point r = a2 - a1;
  const Point s = b2 - b1;
  const double rlen = norm(r);
  const double slen = norm(s);
  if (rlen <= tol.eps_geom || slen <= tol.eps_geom)
    throw GeometryError("degenerate segment in intersection test");

  const double denom = cross(r, s);
  const Point d = b1 - a1;
  // distance of b1 from line(a1,a2); collinearity test independent of length
  const double off_b1 = std::abs(cross(r, d)) / rlen;

  if (std::abs(denom) <= tol.eps_geom * rlen * slen) {
    if (off_b1 > tol.eps_geom) return out;  // parallel, distinct lines
    // collinear: project onto a's direction
    const double t0 = dot(d, r) / (rlen * rlen);
    const double t1 = dot(b2 - a1, r) / (rlen * rlen);
    double lo = std::max(0.0, std::min(t0, t1));
    double hi = std::min(1.0, std::max(t0, t1));
    if (hi < lo - tol.eps_geom / rlen) return out;
    if ((hi - lo) * rlen <= tol.eps_geom) {
      out.kind = SegmentIntersection::Kind::Point;
      out.p = a1 + r * (0.5 * (lo + hi));
      return out;
    }
    out.kind = SegmentIntersection::Kind::Overlap;
    out.p = a1 + r * lo;
    out.q = a1 + r * hi;
    return out;
  }

  const double t = cross(d, s) / denom;
  const double u = cross(d, r) / denom;
  const double t_slack = tol.eps_geom / rlen;
  const double u_slack = tol.eps_geom / slen;
  if (t < -t_slack || t > 1.0 + t_slack || u < -u_slack || u > 1.0 + u_slack) return out;
  out.kind = SegmentIntersection::Kind::Point;
  out.p = a1 + r * std::clamp(t, 0.0, 1.0);
  return out;
}

std::optional<std::pair<Point, Point>> clip_segment_to_circle(const Point& a, const Point& b,
                                                              const Circle& c,
                                                              const Tolerance& tol) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  if (len2 <= tol.eps_geom * tol.eps_geom)
    throw GeometryError("degenerate segment in circle clip");
  const Point m = a - c.center;
  const double B = dot(m, d);
  const double C = dot(m, m) - c.radius * c.radius;
  const double disc = B * B - len2 * C;
  if (disc <= 0.0) return std::nullopt;  // misses the disk, or tangent touch
  const double sq = std::sqrt(disc);
  const double t0 = (-B - sq) / len2;
  const double t1 = (-B + sq) / len2;
  const double lo = std::max(t0, 0.0);
  const double hi = std::min(t1, 1.0);
  const double len = std::sqrt(len2);
  if ((hi - lo) * len <= tol.eps_geom) return std::nullopt;  // degenerates to a point

  auto snap = [&](double t, bool from_root) {
    Point p{a.x + d.x * t, a.y + d.y * t};
    if (from_root) {
      // keep circle-boundary endpoints exactly on the circle
      const double r = distance(c.center, p);
      if (r > 0.0) p = c.center + (p - c.center) * (c.radius / r);
    }
    return p;
  };
  return std::make_pair(snap(lo, lo == t0), snap(hi, hi == t1));
}

Point ray_circle_exit(const Point& center, const Point& through, const Circle& c) {
  const double len = distance(center, through);
  if (len == 0.0) throw GeometryError("degenerate ray");
  return c.center + (through - center) * (c.radius / len);
}

double point_segment_distance(const Point& q, const Point& a, const Point& b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(q, a);
  const double t = std::clamp(dot(q - a, d) / len2, 0.0, 1.0);
  return distance(q, a + d * t);
}

double segment_segment_distance(const Point& a1, const Point& a2,
                                const Point& b1, const Point& b2) {
  // proper crossings have zero clearance
  const Point r = a2 - a1;
  const Point s = b2 - b1;
  const double denom = cross(r, s);
  if (denom != 0.0) {
    const Point d = b1 - a1;
    const double t = cross(d, s) / denom;
    const double u = cross(d, r) / denom;
    if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) return 0.0;
  }
  return std::min(std::min(point_segment_distance(a1, b1, b2), point_segment_distance(a2, b1, b2)),
                  std::min(point_segment_distance(b1, a1, a2), point_segment_distance(b2, a1, a2)));
}

}  // namespace reach
