#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "tilespec/cyclotomic.hpp"

namespace tilespec {

using Point = Cyc;
using Segment = std::pair<Point, Point>;

// Exact area bookkeeping. The shoelace value of a polygon is purely
// imaginary in the complex-embedded field; it is stored as the field element
// equal to 4i times the signed area, which keeps all comparisons and linear
// identities exact even when the field does not contain i.
class AreaValue {
 public:
  AreaValue() = default;
  explicit AreaValue(Cyc four_i_area) : four_i_area_(std::move(four_i_area)) {}

  const Cyc& four_i_area() const { return four_i_area_; }
  double approx() const;
  // Exact rational value when the area is rational (e.g. square datasets).
  std::optional<Rat> as_rational() const;
  int sign() const;

  bool operator==(const AreaValue& other) const {
    return four_i_area_ == other.four_i_area_;
  }
  AreaValue operator+(const AreaValue& other) const {
    return AreaValue(four_i_area_ + other.four_i_area_);
  }
  AreaValue scaled(const Rat& s) const {
    return AreaValue(four_i_area_.scaled(s));
  }
  // Area scales by |u|^2 = u * conj(u) under multiplication by u.
  AreaValue scaled_by_map(const Cyc& u) const {
    return AreaValue(four_i_area_ * u * u.conj());
  }

 private:
  Cyc four_i_area_;
};

// Orientation of the triangle (a, b, c): +1 counterclockwise, -1 clockwise,
// 0 collinear. Exact.
int orientation(const Point& a, const Point& b, const Point& c);

// True when x lies on the closed segment [a, b]. Exact.
bool on_segment(const Point& x, const Point& a, const Point& b);
// True when x lies strictly between a and b on the segment. Exact.
bool strictly_inside_segment(const Point& x, const Point& a, const Point& b);

// Segments as unordered endpoint sets.
bool segment_equal(const Segment& s1, const Segment& s2);

// True when the two segments are collinear and overlap in more than a point.
bool segments_overlap_collinear(const Segment& s1, const Segment& s2);

// Signed shoelace area of a closed polygon (counterclockwise positive).
AreaValue polygon_area(const std::vector<Point>& vertices);

// True when the polygon is convex and counterclockwise with nonzero area.
bool is_convex_ccw(const std::vector<Point>& vertices);

// Fan triangulation (v0, vi, vi+1); valid for convex polygons.
std::vector<std::array<Point, 3>> fan_triangulate(
    const std::vector<Point>& vertices);

// True when x lies strictly inside the convex polygon. Exact.
bool strictly_inside_convex(const Point& x, const std::vector<Point>& poly);

// Strictly inside a polygon that fan-triangulates from vertex 0. A point on
// an internal fan diagonal is inside; a point on a boundary edge is not.
bool strictly_inside_polygon(const Point& x, const std::vector<Point>& poly);

// True when the interiors of two convex polygons intersect. Touching along
// edges or vertices is not an intersection. Exact separating-axis test.
bool convex_interiors_intersect(const std::vector<Point>& a,
                                const std::vector<Point>& b);

// Canonical key for a segment (unordered endpoints), usable in ordered maps.
struct SegmentKey {
  Point lo, hi;
  SegmentKey(const Point& a, const Point& b);
  bool operator<(const SegmentKey& other) const;
  bool operator==(const SegmentKey& other) const {
    return lo == other.lo && hi == other.hi;
  }
};

}  // namespace tilespec
