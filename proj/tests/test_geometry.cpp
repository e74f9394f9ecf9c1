#include <doctest.h>

#include <cmath>
#include <random>

#include "fieldsmooth/geometry.hpp"

using namespace fieldsmooth;

namespace {

PathPolyline circle_polyline(double radius, double spacing, double arc = 2.0 * M_PI) {
  std::vector<Point2> pts;
  const int n = static_cast<int>(std::ceil(arc * radius / spacing));
  for (int i = 0; i <= n; ++i) {
    const double th = arc * i / n;
    pts.push_back({radius * std::cos(th), radius * std::sin(th)});
  }
  return PathPolyline(std::move(pts), VertexRole::Headland);
}

}  // namespace

TEST_CASE("resample_uniform on a straight segment") {
  const PathPolyline in({{0, 0}, {10, 0}}, VertexRole::Headland);
  const PathPolyline out = resample_uniform(in, 1.0);
  CHECK(out.size() == 11);
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out.vertices[i].y == doctest::Approx(0.0));
    CHECK(out.vertices[i].x == doctest::Approx(static_cast<double>(i)));
  }
}

TEST_CASE("resample_uniform keeps corner vertices on an L path") {
  const PathPolyline in({{0, 0}, {10, 0}, {10, 10}}, VertexRole::Headland);
  const PathPolyline out = resample_uniform(in, 1.0);
  CHECK(out.size() == 21);
  bool corner_kept = false;
  for (const Point2& p : out.vertices)
    if (distance(p, {10, 0}) < 1e-12) corner_kept = true;
  CHECK(corner_kept);
  CHECK(out.length() == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("resample_uniform with spacing beyond total length keeps endpoints") {
  const PathPolyline in({{0, 0}, {3, 4}}, VertexRole::Lane);
  const PathPolyline out = resample_uniform(in, 100.0);
  CHECK(out.size() == 2);
  CHECK(distance(out.vertices.front(), {0, 0}) < 1e-12);
  CHECK(distance(out.vertices.back(), {3, 4}) < 1e-12);
}

TEST_CASE("resample_uniform preserves arclength") {
  const PathPolyline in({{0, 0}, {7, 3}, {9, 12}, {-4, 15}}, VertexRole::Headland);
  for (const double sp : {0.25, 1.0, 3.7}) {
    const PathPolyline out = resample_uniform(in, sp);
    CHECK(out.length() == doctest::Approx(in.length()).epsilon(1e-9));
  }
}

TEST_CASE("arclength table matches chord distances") {
  const PathPolyline p({{0, 0}, {1, 1}, {4, 5}, {4, 9}}, VertexRole::Lane);
  CHECK(p.cumulative_s[0] == 0.0);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double chord = distance(p.vertices[i], p.vertices[i + 1]);
    CHECK(p.cumulative_s[i + 1] - p.cumulative_s[i] == doctest::Approx(chord).epsilon(1e-12));
  }
}

TEST_CASE("build_frame on collinear points has zero curvature") {
  const PathPolyline in = resample_uniform(PathPolyline({{0, 0}, {30, 0}}, VertexRole::Lane), 1.0);
  const ReferenceFrame f = build_frame(in);
  for (const FrameSample& s : f.samples) {
    CHECK(s.curvature == doctest::Approx(0.0));
    CHECK(s.heading == doctest::Approx(0.0));
  }
}

TEST_CASE("build_frame recovers circle curvature") {
  const ReferenceFrame f = build_frame(circle_polyline(10.0, 1.0, M_PI));
  for (std::size_t i = 1; i + 1 < f.size(); ++i)
    CHECK(std::fabs(f.samples[i].curvature) == doctest::Approx(0.1).epsilon(1e-3));
}

TEST_CASE("build_frame curvature drops at a circle-to-straight junction") {
  PathPolyline arc = circle_polyline(10.0, 1.0, M_PI / 2.0);
  // continue straight along the end tangent
  const Point2 end = arc.vertices.back();
  const Point2 tangent{-end.y / 10.0, end.x / 10.0};
  std::vector<Point2> pts = arc.vertices;
  for (int i = 1; i <= 10; ++i) pts.push_back(end + tangent * static_cast<double>(i));
  const ReferenceFrame f = build_frame(PathPolyline(std::move(pts), VertexRole::Headland));
  const std::size_t junction = arc.size() - 1;
  CHECK(std::fabs(f.samples[junction - 2].curvature) == doctest::Approx(0.1).epsilon(1e-2));
  CHECK(std::fabs(f.samples[junction + 2].curvature) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("project_to_frame on an axis-aligned frame") {
  const ReferenceFrame f =
      build_frame(resample_uniform(PathPolyline({{0, 0}, {20, 0}}, VertexRole::Lane), 1.0));
  const auto [s, ey] = project_to_frame(f, {3.0, 2.0});
  CHECK(s == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(ey == doctest::Approx(2.0).epsilon(1e-9));

  const auto [s2, ey2] = project_to_frame(f, {7.5, 0.0});
  CHECK(s2 == doctest::Approx(7.5).epsilon(1e-9));
  CHECK(ey2 == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("frame_to_global on a straight frame") {
  const ReferenceFrame f =
      build_frame(resample_uniform(PathPolyline({{0, 0}, {20, 0}}, VertexRole::Lane), 1.0));
  const auto [p, psi] = frame_to_global(f, 5.0, 2.0, 0.25);
  CHECK(p.x == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(p.y == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(psi == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("project/frame round trip on curved frames") {
  const ReferenceFrame f = build_frame(circle_polyline(10.0, 0.5, M_PI));
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> u_s(1.0, f.length() - 1.0);
  std::uniform_real_distribution<double> u_e(-4.0, 4.0);  // < 0.5 * rho_min
  for (int k = 0; k < 200; ++k) {
    const double s = u_s(rng);
    const double ey = u_e(rng);
    const auto [p, psi] = frame_to_global(f, s, ey, 0.0);
    (void)psi;
    const auto [s2, ey2] = project_to_frame(f, p);
    const auto [p2, psi2] = frame_to_global(f, s2, ey2, 0.0);
    (void)psi2;
    CHECK(distance(p, p2) < 1e-6);
  }
}

TEST_CASE("inward_offset of a square") {
  const std::vector<Point2> sq{{0, 0}, {100, 0}, {100, 100}, {0, 100}};
  const std::vector<Point2> in = inward_offset(sq, 10.0);
  CHECK(std::fabs(polygon_area(in)) == doctest::Approx(80.0 * 80.0).epsilon(1e-6));
  for (const Point2& p : in) {
    CHECK(point_in_polygon(sq, p));
    CHECK(distance_to_polygon_boundary(sq, p) >= 10.0 - 1e-6);
  }
}

TEST_CASE("inward_offset of an equilateral triangle") {
  const double side = 40.0;
  const std::vector<Point2> tri{{0, 0}, {side, 0}, {side / 2.0, side * std::sqrt(3.0) / 2.0}};
  const std::vector<Point2> in = inward_offset(tri, 5.0);
  // similar triangle with side shrunk by 2 * d * sqrt(3)
  const double expect_side = side - 2.0 * 5.0 * std::sqrt(3.0);
  const double expect_area = std::sqrt(3.0) / 4.0 * expect_side * expect_side;
  CHECK(std::fabs(polygon_area(in)) == doctest::Approx(expect_area).epsilon(1e-6));
}

TEST_CASE("inward_offset past the inradius throws") {
  const std::vector<Point2> sq{{0, 0}, {20, 0}, {20, 20}, {0, 20}};
  CHECK_THROWS_AS(inward_offset(sq, 10.0), EmptyOffset);
  CHECK_THROWS_AS(inward_offset(sq, 15.0), EmptyOffset);
}

TEST_CASE("corner_cut_smooth leaves collinear points unchanged") {
  const PathPolyline in = resample_uniform(PathPolyline({{0, 0}, {10, 0}}, VertexRole::Lane), 1.0);
  const PathPolyline out = corner_cut_smooth(in, 3);
  REQUIRE(out.size() == in.size());
  for (std::size_t i = 0; i < in.size(); ++i) CHECK(distance(in.vertices[i], out.vertices[i]) < 1e-12);
}

TEST_CASE("corner_cut_smooth with zero iterations is the identity") {
  const PathPolyline in({{0, 0}, {1, 1}, {2, 0}, {3, 2}}, VertexRole::Headland);
  const PathPolyline out = corner_cut_smooth(in, 0);
  REQUIRE(out.size() == in.size());
  for (std::size_t i = 0; i < in.size(); ++i) CHECK(distance(in.vertices[i], out.vertices[i]) < 1e-12);
}

TEST_CASE("corner_cut_smooth applies the 1-2-1 stencil and keeps endpoints") {
  const PathPolyline in({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}}, VertexRole::Headland);
  const PathPolyline out = corner_cut_smooth(in, 1);
  CHECK(distance(out.vertices.front(), in.vertices.front()) < 1e-12);
  CHECK(distance(out.vertices.back(), in.vertices.back()) < 1e-12);
  // corner vertex (2,0): (P1 + 2 P2 + P3) / 4 = ((1,0) + (4,0) + (2,1)) / 4
  CHECK(out.vertices[2].x == doctest::Approx(7.0 / 4.0));
  CHECK(out.vertices[2].y == doctest::Approx(1.0 / 4.0));
}

TEST_CASE("corner_cut_smooth does not increase total turning") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> jig(-0.4, 0.4);
  std::vector<Point2> pts;
  for (int i = 0; i <= 40; ++i) pts.push_back({static_cast<double>(i), jig(rng)});
  const PathPolyline in(std::move(pts), VertexRole::Headland);
  PathPolyline cur = in;
  for (int it = 0; it < 4; ++it) {
    const PathPolyline next = corner_cut_smooth(cur, 1);
    CHECK(total_turning(next) <= total_turning(cur) + 1e-9);
    cur = next;
  }
}

TEST_CASE("polygon helpers agree on simple shapes") {
  const std::vector<Point2> sq{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  CHECK(polygon_area(sq) == doctest::Approx(100.0));
  CHECK(polygon_is_simple(sq));
  CHECK(point_in_polygon(sq, {5, 5}));
  CHECK(!point_in_polygon(sq, {15, 5}));
  CHECK(distance_to_polygon_boundary(sq, {5, 5}) == doctest::Approx(5.0));

  const std::vector<Point2> bowtie{{0, 0}, {10, 10}, {10, 0}, {0, 10}};
  CHECK(!polygon_is_simple(bowtie));
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
  CHECK(wrap_angle(3.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_angle(-3.0 * M_PI / 2.0) == doctest::Approx(M_PI / 2.0));
  CHECK(wrap_angle(2.0 * M_PI + 0.1) == doctest::Approx(0.1));
}
