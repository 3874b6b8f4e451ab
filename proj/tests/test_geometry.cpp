#include "tilespec/geometry.hpp"

#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "tilespec/numeric.hpp"

using tilespec::AreaValue;
using tilespec::Cyc;
using tilespec::Field;
using tilespec::Point;
using tilespec::Rat;
using tilespec::Segment;
using tilespec_test::SplitMix64;

namespace {

const Field* gauss() { return Field::of_order(2); }
const Field* pent() { return Field::of_order(5); }

Point pt(const Field* f, const Rat& x, const Rat& y) {
  // x + y*zeta^{half/2} requires i in the field; only valid for even order.
  return Cyc::from_rat(f, x) + Cyc::zeta_pow(f, f->half_order() / 2).scaled(y);
}

Cyc phi() {
  const Field* f = pent();
  return Cyc::from_rat(f, 1) + Cyc::zeta_pow(f, 2) - Cyc::zeta_pow(f, 3);
}

}  // namespace

TEST_CASE("unit right triangle has area one half") {
  const Field* f = gauss();
  std::vector<Point> tri = {pt(f, 0, 0), pt(f, 1, 0), pt(f, 0, 1)};
  AreaValue a = tilespec::polygon_area(tri);
  REQUIRE(a.as_rational().has_value());
  CHECK(*a.as_rational() == Rat(1, 2));
  CHECK(a.sign() == 1);
}

TEST_CASE("degenerate polygon rejected") {
  const Field* f = gauss();
  std::vector<Point> degenerate = {pt(f, 0, 0), pt(f, 1, 0)};
  CHECK_THROWS_AS(tilespec::polygon_area(degenerate), std::invalid_argument);
  std::vector<Point> flat = {pt(f, 0, 0), pt(f, 1, 0), pt(f, 2, 0)};
  CHECK(tilespec::polygon_area(flat).sign() == 0);
}

TEST_CASE("area scaling law under the golden scale") {
  const Field* f = pent();
  Cyc lambda = phi();
  SplitMix64 rng(0x90210);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> tri;
    do {
      tri = {tilespec_test::random_cyc(f, rng), tilespec_test::random_cyc(f, rng),
             tilespec_test::random_cyc(f, rng)};
    } while (tilespec::polygon_area(tri).sign() == 0);
    std::vector<Point> scaled;
    for (const Point& v : tri) scaled.push_back(v * lambda);
    AreaValue lhs = tilespec::polygon_area(scaled);
    AreaValue rhs = tilespec::polygon_area(tri).scaled_by_map(lambda);
    CHECK(lhs == rhs);
    // lambda is real, so the map scales area by exactly lambda^2.
    AreaValue direct = tilespec::polygon_area(tri);
    CHECK(AreaValue(direct.four_i_area() * lambda * lambda) == lhs);
  }
}

TEST_CASE("area invariant under rotation and translation") {
  const Field* f = pent();
  SplitMix64 rng(0x31337);
  std::vector<Point> tri = {tilespec_test::random_cyc(f, rng),
                            tilespec_test::random_cyc(f, rng),
                            tilespec_test::random_cyc(f, rng)};
  Cyc rot = Cyc::zeta_pow(f, 3);
  Cyc shift = tilespec_test::random_cyc(f, rng);
  std::vector<Point> moved;
  for (const Point& v : tri) moved.push_back(v * rot + shift);
  CHECK(tilespec::polygon_area(moved) == tilespec::polygon_area(tri));
}

TEST_CASE("golden gnomon area matches the closed form") {
  const Field* f = pent();
  // Vertices 0, phi, phi*zeta: legs phi with apex angle pi/5.
  std::vector<Point> tri = {Cyc(f), phi(), phi() * Cyc::zeta_pow(f, 1)};
  double got = tilespec::polygon_area(tri).approx();
  double p = (1.0 + std::sqrt(5.0)) / 2.0;
  double expect = 0.5 * p * p * std::sin(M_PI / 5.0);
  CHECK(std::abs(got - expect) < 1e-12);
}

TEST_CASE("segment equality ignores orientation") {
  const Field* f = gauss();
  Segment s{pt(f, 0, 0), pt(f, 2, 1)};
  Segment rev{pt(f, 2, 1), pt(f, 0, 0)};
  Segment moved{pt(f, 1, 0), pt(f, 3, 1)};
  CHECK(tilespec::segment_equal(s, rev));
  CHECK(!tilespec::segment_equal(s, moved));
}

TEST_CASE("orientation and segment membership") {
  const Field* f = gauss();
  Point a = pt(f, 0, 0), b = pt(f, 4, 0);
  CHECK(tilespec::orientation(a, b, pt(f, 1, 1)) == 1);
  CHECK(tilespec::orientation(a, b, pt(f, 1, -1)) == -1);
  CHECK(tilespec::orientation(a, b, pt(f, 7, 0)) == 0);
  CHECK(tilespec::on_segment(pt(f, 2, 0), a, b));
  CHECK(tilespec::on_segment(a, a, b));
  CHECK(!tilespec::on_segment(pt(f, 5, 0), a, b));
  CHECK(tilespec::strictly_inside_segment(pt(f, 2, 0), a, b));
  CHECK(!tilespec::strictly_inside_segment(a, a, b));
}

TEST_CASE("collinear overlap detection") {
  const Field* f = gauss();
  Segment s1{pt(f, 0, 0), pt(f, 2, 0)};
  Segment s2{pt(f, 1, 0), pt(f, 3, 0)};
  Segment s3{pt(f, 2, 0), pt(f, 4, 0)};
  Segment s4{pt(f, 0, 1), pt(f, 2, 1)};
  CHECK(tilespec::segments_overlap_collinear(s1, s2));
  CHECK(!tilespec::segments_overlap_collinear(s1, s3));  // touch at one point
  CHECK(!tilespec::segments_overlap_collinear(s1, s4));  // parallel lines
}

TEST_CASE("convex interior intersection is exact and touch-tolerant") {
  const Field* f = gauss();
  std::vector<Point> sq1 = {pt(f, 0, 0), pt(f, 1, 0), pt(f, 1, 1), pt(f, 0, 1)};
  std::vector<Point> sq2 = {pt(f, 1, 0), pt(f, 2, 0), pt(f, 2, 1), pt(f, 1, 1)};
  std::vector<Point> sq3 = {pt(f, Rat(1, 2), 0), pt(f, Rat(3, 2), 0),
                            pt(f, Rat(3, 2), 1), pt(f, Rat(1, 2), 1)};
  CHECK(!tilespec::convex_interiors_intersect(sq1, sq2));
  CHECK(tilespec::convex_interiors_intersect(sq1, sq3));
  CHECK(tilespec::convex_interiors_intersect(sq2, sq3));
  CHECK(tilespec::is_convex_ccw(sq1));
  CHECK(tilespec::strictly_inside_convex(pt(f, Rat(1, 2), Rat(1, 2)), sq1));
  CHECK(!tilespec::strictly_inside_convex(pt(f, 1, Rat(1, 2)), sq1));
}

TEST_CASE("shared edges in a 2x2 square block") {
  const Field* f = gauss();
  std::vector<std::vector<Point>> squares;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      squares.push_back({pt(f, x, y), pt(f, x + 1, y), pt(f, x + 1, y + 1),
                         pt(f, x, y + 1)});
    }
  }
  int shared = 0;
  for (size_t i = 0; i < squares.size(); ++i) {
    for (size_t j = i + 1; j < squares.size(); ++j) {
      for (size_t ei = 0; ei < 4; ++ei) {
        for (size_t ej = 0; ej < 4; ++ej) {
          Segment a{squares[i][ei], squares[i][(ei + 1) % 4]};
          Segment b{squares[j][ej], squares[j][(ej + 1) % 4]};
          if (tilespec::segment_equal(a, b)) ++shared;
        }
      }
    }
  }
  CHECK(shared == 4);
}
