// Geometric primitives for geodesic reachability: points, segments,
// circles, and circular-arc polygon boundaries.
#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace reach {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTau = 2.0 * kPi;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
public:
  using Error::Error;
};

// Global tolerance policy. All tolerances are absolute; instances are
// expected to live on a roughly unit-to-hundreds coordinate scale (the
// CLI validates this at load).
struct Tolerance {
  double eps_geom = 1e-9;      // geometric coincidence tolerance
  double eps_boundary = 1e-7;  // membership classification band

  // Derived working tolerances for boolean ops and loop stitching.
  double weld() const { return 1e3 * eps_geom; }
  double stitch() const { return 2e3 * eps_geom; }
  double probe_offset() const { return std::max(100.0 * eps_boundary, 1e4 * eps_geom); }

  void validate() const {
    if (!(eps_geom > 0.0) || !(eps_geom < eps_boundary))
      throw GeometryError("tolerance policy requires 0 < eps_geom < eps_boundary");
  }
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  Point operator*(double s) const { return {x * s, y * s}; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& a) { return std::hypot(a.x, a.y); }
inline Point perp(const Point& a) { return {-a.y, a.x}; }  // rotate +90 degrees

double distance(const Point& p, const Point& q);

// Unit vector from p toward q; throws on coincident points.
Point direction(const Point& p, const Point& q);

inline Point unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Counter-clockwise angle of the ray center->p from the +x ray, in [0, 2*pi).
// Throws GeometryError("degenerate angle") when p coincides with center.
double polar_angle(const Point& center, const Point& p);

// (to - from) mod 2*pi, in [0, 2*pi).
double ccw_span(double from, double to);

struct ObstacleSegment {
  Point a;
  Point b;
  int id = -1;  // stable index into the input list
};

struct Circle {
  Point center;
  double radius = 0.0;

  Circle() = default;
  Circle(Point c, double r) : center(c), radius(r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw GeometryError("invalid circle: radius must be positive");
  }
  Point point_at(double angle) const { return center + unit_vector(angle) * radius; }
};

struct LineEdge {
  Point start;
  Point end;
};

// Counter-clockwise circular arc about circle.center. The appendix point
// lies on the arc strictly between start and end and disambiguates the
// major vs minor arc; start == end with any appendix encodes a full circle.
struct ArcEdge {
  Circle circle;
  Point start;
  Point end;
  Point appendix;
};

using Edge = std::variant<LineEdge, ArcEdge>;

inline const Point& edge_start(const Edge& e) {
  return std::holds_alternative<LineEdge>(e) ? std::get<LineEdge>(e).start : std::get<ArcEdge>(e).start;
}
inline const Point& edge_end(const Edge& e) {
  return std::holds_alternative<LineEdge>(e) ? std::get<LineEdge>(e).end : std::get<ArcEdge>(e).end;
}

// CCW span of the arc in (0, 2*pi]; start == end is read as a full circle.
double arc_ccw_span(const ArcEdge& arc, const Tolerance& tol = {});

enum class LoopOrientation { CCW, CW };

// Closed cyclic boundary of line and arc edges. Outer loops are CCW,
// hole loops CW.
struct ArcPolygon {
  std::vector<Edge> edges;
  LoopOrientation orientation = LoopOrientation::CCW;
  bool degenerate = false;  // sub-tolerance radius; contributes nothing
};

// Signed area by Green's theorem: straight chords plus exact circular
// corrections. Positive for CCW loops.
double polygon_signed_area(const ArcPolygon& loop, const Tolerance& tol = {});

// Throws GeometryError when the loop is not closed within tolerance or an
// arc edge violates its on-circle/appendix invariants.
void validate_polygon(const ArcPolygon& loop, const Tolerance& tol = {});

struct SegmentIntersection {
  enum class Kind { None, Point, Overlap } kind = Kind::None;
  Point p;  // single intersection, or overlap start
  Point q;  // overlap end
};

SegmentIntersection segment_segment_intersection(const Point& a1, const Point& a2,
                                                 const Point& b1, const Point& b2,
                                                 const Tolerance& tol = {});

// Maximal sub-segment of [a,b] inside the closed disk of c, or nullopt when
// the segment misses the disk. A tangent touch has no extent and returns
// nullopt. Endpoints produced on the circle are snapped onto it.
std::optional<std::pair<Point, Point>> clip_segment_to_circle(const Point& a, const Point& b,
                                                              const Circle& c,
                                                              const Tolerance& tol = {});

// Intersection of the ray center->through with circle c, where c is centered
// at `center` and `through` lies strictly inside. Throws on a degenerate ray.
Point ray_circle_exit(const Point& center, const Point& through, const Circle& c);

// Distance from point q to segment [a,b].
double point_segment_distance(const Point& q, const Point& a, const Point& b);

// Minimum distance between two segments (0 when they intersect).
double segment_segment_distance(const Point& a1, const Point& a2,
                                const Point& b1, const Point& b2);

}  // namespace reach
