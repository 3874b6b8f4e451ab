#include "tilespec/geometry.hpp"

#include <array>

#include "tilespec/numeric.hpp"

namespace tilespec {

namespace {

// 2i times the cross product of the vectors u and v (a purely imaginary
// field element): conj(u)*v - conj(v)*u.
Cyc cross_2i(const Cyc& u, const Cyc& v) {
  return u.conj() * v - v.conj() * u;
}

// 2 times the dot product of u and v (a real field element):
// conj(u)*v + conj(v)*u.
Cyc dot_2(const Cyc& u, const Cyc& v) {
  return u.conj() * v + v.conj() * u;
}

}  // namespace

double AreaValue::approx() const { return imag_part(four_i_area_) / 4.0; }

std::optional<Rat> AreaValue::as_rational() const {
  const Field* f = four_i_area_.field();
  const int half = f->half_order();
  if (half % 2 != 0) return std::nullopt;
  // For even half order the field contains i = zeta^{half/2}, so area =
  // (four_i_area / 4i) is a field element; report it when it is rational.
  Cyc minus_i = Cyc::zeta_pow(f, half / 2).conj();
  Cyc area = (four_i_area_ * minus_i).scaled(Rat(1, 4));
  return area.as_rational();
}

int AreaValue::sign() const { return sign_imag(four_i_area_); }

int orientation(const Point& a, const Point& b, const Point& c) {
  return sign_imag(cross_2i(b - a, c - a));
}

bool on_segment(const Point& x, const Point& a, const Point& b) {
  if (orientation(a, b, x) != 0) return false;
  Cyc u = b - a;
  Cyc t = dot_2(x - a, u);
  if (sign_real(t) < 0) return false;
  Cyc len2 = dot_2(u, u);
  return sign_real(len2 - t) >= 0;
}

bool strictly_inside_segment(const Point& x, const Point& a, const Point& b) {
  if (orientation(a, b, x) != 0) return false;
  Cyc u = b - a;
  Cyc t = dot_2(x - a, u);
  if (sign_real(t) <= 0) return false;
  Cyc len2 = dot_2(u, u);
  return sign_real(len2 - t) > 0;
}

bool segment_equal(const Segment& s1, const Segment& s2) {
  return (s1.first == s2.first && s1.second == s2.second) ||
         (s1.first == s2.second && s1.second == s2.first);
}

bool segments_overlap_collinear(const Segment& s1, const Segment& s2) {
  const Point& a = s1.first;
  const Point& b = s1.second;
  if (orientation(a, b, s2.first) != 0 || orientation(a, b, s2.second) != 0) {
    return false;
  }
  // Project both segments on the common line through a with direction u.
  Cyc u = b - a;
  Cyc t0 = Cyc::from_rat(u.field(), Rat(0));
  Cyc t1 = dot_2(u, u);
  Cyc s0 = dot_2(s2.first - a, u);
  Cyc s1p = dot_2(s2.second - a, u);
  if (sign_real(s1p - s0) < 0) std::swap(s0, s1p);
  // Overlap of [t0, t1] and [s0, s1p] has positive length iff
  // min(t1, s1p) > max(t0, s0).
  const Cyc& lo = sign_real(s0 - t0) > 0 ? s0 : t0;
  const Cyc& hi = sign_real(s1p - t1) < 0 ? s1p : t1;
  return sign_real(hi - lo) > 0;
}

AreaValue polygon_area(const std::vector<Point>& vertices) {
  if (vertices.size() < 3) throw std::invalid_argument("degenerate polygon");
  const Field* f = vertices.front().field();
  Cyc acc(f);
  for (size_t i = 0; i < vertices.size(); ++i) {
    const Point& p = vertices[i];
    const Point& q = vertices[(i + 1) % vertices.size()];
    acc = acc + (p.conj() * q - q.conj() * p);
  }
  return AreaValue(acc);
}

bool is_convex_ccw(const std::vector<Point>& vertices) {
  const size_t n = vertices.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    int o = orientation(vertices[i], vertices[(i + 1) % n],
                        vertices[(i + 2) % n]);
    if (o <= 0) return false;
  }
  return true;
}

std::vector<std::array<Point, 3>> fan_triangulate(
    const std::vector<Point>& vertices) {
  std::vector<std::array<Point, 3>> out;
  for (size_t i = 1; i + 1 < vertices.size(); ++i) {
    out.push_back({vertices[0], vertices[i], vertices[i + 1]});
  }
  return out;
}

bool strictly_inside_convex(const Point& x, const std::vector<Point>& poly) {
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    if (orientation(poly[i], poly[(i + 1) % n], x) <= 0) return false;
  }
  return true;
}

bool strictly_inside_polygon(const Point& x, const std::vector<Point>& poly) {
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    if (on_segment(x, poly[i], poly[(i + 1) % n])) return false;
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    const bool inside_closed = orientation(poly[0], poly[i], x) >= 0 &&
                               orientation(poly[i], poly[i + 1], x) >= 0 &&
                               orientation(poly[i + 1], poly[0], x) >= 0;
    if (inside_closed) return true;
  }
  return false;
}

namespace {

bool has_separating_edge(const std::vector<Point>& a,
                         const std::vector<Point>& b) {
  const size_t n = a.size();
  for (size_t i = 0; i < n; ++i) {
    const Point& u = a[i];
    const Point& v = a[(i + 1) % n];
    bool all_outside = true;
    for (const Point& w : b) {
      if (orientation(u, v, w) > 0) {
        all_outside = false;
        break;
      }
    }
    if (all_outside) return true;
  }
  return false;
}

}  // namespace

bool convex_interiors_intersect(const std::vector<Point>& a,
                                const std::vector<Point>& b) {
  return !has_separating_edge(a, b) && !has_separating_edge(b, a);
}

SegmentKey::SegmentKey(const Point& a, const Point& b)
    : lo(a.compare(b) <= 0 ? a : b), hi(a.compare(b) <= 0 ? b : a) {}

bool SegmentKey::operator<(const SegmentKey& other) const {
  int c = lo.compare(other.lo);
  if (c != 0) return c < 0;
  return hi.compare(other.hi) < 0;
}

}  // namespace tilespec
