#include <doctest.h>

#include <cmath>

#include "fieldsmooth/smoother.hpp"

using namespace fieldsmooth;

namespace {

ReferencePath straight_reference(std::size_t n_samples, ProblemType problem) {
  ReferencePath ref;
  for (std::size_t i = 0; i < n_samples; ++i)
    ref.frame.samples.push_back({static_cast<double>(i), {static_cast<double>(i), 0.0}, 0.0, 0.0});
  ref.problem = problem;
  ref.kind = problem == ProblemType::HeadlandSmoothing ? SegmentKind::HeadlandCorner
                                                       : SegmentKind::HeadlandToLane;
  ref.spacing = 1.0;
  ref.entry = {{0.0, 0.0}, 0.0};
  ref.exit = {{static_cast<double>(n_samples - 1), 0.0}, 0.0};
  return ref;
}

ReferencePath corner_reference() {
  VehicleParams params;
  const double w = 20.0;
  const PathPolyline path = resample_uniform(
      PathPolyline({{-40, 0}, {0, 0}, {0, 40}}, VertexRole::Headland), 1.0);
  const std::vector<Point2> contour{{-40, -10}, {10, -10}, {10, 40}, {-40, 40}};
  auto segs = detect_edgy_segments(path, 20.0 * M_PI / 180.0, params.min_turn_radius());
  REQUIRE(segs.size() == 1);
  expand_segments(path, segs, std::max(2.0 * params.min_turn_radius(), 0.5 * w) + 3.0,
                  transition_half_length(5.0));
  return build_pwa5_reference(segs.front(), path, contour, w, params, 1.0, 2);
}

}  // namespace

TEST_CASE("LP sizes follow the 2N+1 / 4N-2 pattern") {
  VehicleParams params;
  const SmootherOptions opts;
  const ReferencePath ref1 = straight_reference(3, ProblemType::HeadlandSmoothing);  // N = 2
  const LtvSpatialSystem sys1 = linearize_and_discretize(ref1.frame, params);
  const LinearProgram lp1 = build_lp_problem1(condense(sys1, {0, 0}), sys1, ref1, params, opts);
  CHECK(lp1.num_vars() == 5);
  CHECK(lp1.num_rows() == 6);

  ReferencePath ref2 = straight_reference(3, ProblemType::TransitionSmoothing);
  ref2.weight_index = 1;
  const LinearProgram lp2 = build_lp_problem2(condense(sys1, {0, 0}), sys1, ref2, params, opts);
  CHECK(lp2.num_vars() == 4);
  CHECK(lp2.num_rows() == 6);
}

TEST_CASE("Problem 2 weights split at the weight index") {
  VehicleParams params;
  SmootherOptions opts;
  ReferencePath ref = straight_reference(7, ProblemType::TransitionSmoothing);  // N = 6
  ref.weight_index = 3;
  const LtvSpatialSystem sys = linearize_and_discretize(ref.frame, params);
  const LinearProgram lp = build_lp_problem2(condense(sys, {0, 0}), sys, ref, params, opts);
  // leaving the headland: heavy weights before/at the split, light after
  const int n = 6;
  for (int j = 0; j < n; ++j) {
    const double expect = (j + 1) <= 3 ? opts.near_weight : opts.far_weight;
    CHECK(lp.cost[n + j] == doctest::Approx(expect));
  }
  CHECK(lp.cost[0] == 0.0);  // steering itself carries no cost
}

TEST_CASE("straight reference solves to the identity") {
  VehicleParams params;
  for (const ProblemType pt : {ProblemType::HeadlandSmoothing, ProblemType::TransitionSmoothing}) {
    ReferencePath ref = straight_reference(21, pt);
    if (pt == ProblemType::TransitionSmoothing) ref.weight_index = 5;
    const SmoothedPath sp = solve_smoothing(ref, params);
    CHECK(sp.max_offset <= 1e-7);
    CHECK(sp.slack <= 1e-7);
    for (const double d : sp.steering) CHECK(std::fabs(d) <= 1e-6);
    for (std::size_t j = 0; j < sp.path.size(); ++j)
      CHECK(std::fabs(sp.path.vertices[j].y) <= 1e-7);
  }
}

TEST_CASE("corner smoothing is feasible and respects the interior side") {
  VehicleParams params;
  const ReferencePath ref = corner_reference();
  const SmoothedPath sp = solve_smoothing(ref, params);

  CHECK(sp.slack <= 1e-6);  // the interior-side hard constraint is met
  CHECK(sp.max_offset < 2.0);
  // the tip region exceeds the trackable curvature, so the single-linearisation
  // rollout mismatch is a diagnostic here, not a small number
  CHECK(std::isfinite(sp.rollout_mismatch));
  CHECK(sp.rollout_mismatch < 1.5);
  for (const double d : sp.steering) CHECK(std::fabs(d) <= params.delta_max + 1e-9);
  const double rate = params.ddelta_max / params.v_ref;
  for (std::size_t j = 0; j + 1 < sp.steering.size(); ++j)
    CHECK(std::fabs(sp.steering[j + 1] - sp.steering[j]) <= rate + 1e-9);
}

TEST_CASE("corner solution satisfies the jaggedness bound") {
  VehicleParams params;
  const ReferencePath ref = corner_reference();
  const SmoothedPath sp = solve_smoothing(ref, params);
  // second difference of the lateral offset is bounded by the curvature the
  // steering range admits over one grid step
  std::vector<double> ey;
  for (const Point2& p : sp.path.vertices) ey.push_back(project_to_frame(sp.frame, p).second);
  const double bound = 1.0 * std::tan(params.delta_max) / params.wheelbase + 1e-6;
  for (std::size_t j = 1; j + 1 < ey.size(); ++j)
    CHECK(std::fabs(ey[j + 1] - 2.0 * ey[j] + ey[j - 1]) <= bound);
}

TEST_CASE("transition smoothing at a perpendicular junction") {
  VehicleParams params;
  std::vector<Point2> pts;
  std::vector<VertexRole> roles;
  for (int i = 0; i <= 40; ++i) {
    pts.push_back({-40.0 + i, 0.0});
    roles.push_back(VertexRole::Headland);
  }
  for (int i = 1; i <= 40; ++i) {
    pts.push_back({0.0, static_cast<double>(i)});
    roles.push_back(VertexRole::Lane);
  }
  const PathPolyline path(pts, roles);
  auto segs = detect_edgy_segments(path, 20.0 * M_PI / 180.0, params.min_turn_radius());
  REQUIRE(segs.size() == 1);
  expand_segments(path, segs, 13.0, transition_half_length(5.0));
  ReferencePath ref = build_dubins_reference(segs.front(), path, 5.0, 2.5, 1.0);
  const PathPolyline headland =
      resample_uniform(PathPolyline({{-40, 0}, {0, 0}}, VertexRole::Headland), 1.0);
  ref.weight_index = compute_weight_index(ref, headland);

  const SmoothedPath sp = solve_smoothing(ref, params);
  CHECK(sp.max_offset < 0.5);
  for (const double d : sp.steering) CHECK(std::fabs(d) <= params.delta_max + 1e-9);
  const double rate = params.ddelta_max / params.v_ref;
  for (std::size_t j = 0; j + 1 < sp.steering.size(); ++j)
    CHECK(std::fabs(sp.steering[j + 1] - sp.steering[j]) <= rate + 1e-9);
  // endpoints meet the surrounding path
  CHECK(distance(sp.path.vertices.front(), path.vertices[segs.front().i0]) < 0.2);
  CHECK(distance(sp.path.vertices.back(), path.vertices[segs.front().i1]) < 0.75);
}

TEST_CASE("stitch_replace splice arithmetic and turning reduction") {
  VehicleParams params;
  const PathPolyline path = resample_uniform(
      PathPolyline({{-40, 0}, {0, 0}, {0, 40}}, VertexRole::Headland), 1.0);
  const std::vector<Point2> contour{{-40, -10}, {10, -10}, {10, 40}, {-40, 40}};
  auto segs = detect_edgy_segments(path, 20.0 * M_PI / 180.0, params.min_turn_radius());
  expand_segments(path, segs, 13.0, transition_half_length(5.0));
  const ReferencePath ref = build_pwa5_reference(segs.front(), path, contour, 20.0, params, 1.0, 2);
  const SmoothedPath sp = solve_smoothing(ref, params);

  const PathPolyline out = stitch_replace(path, segs.front(), sp);
  CHECK(out.size() == path.size() - (segs.front().i1 - segs.front().i0 + 1) + sp.path.size());
  CHECK(distance(out.vertices.front(), path.vertices.front()) < 1e-12);
  CHECK(distance(out.vertices.back(), path.vertices.back()) < 1e-12);

  // junction continuity: heading jump at both seams stays below the edgy
  // threshold (the replacement itself turns more than the raw corner because
  // of the tip excursion, so total turning is not the right metric)
  const auto heading = [](const Point2& a, const Point2& b) {
    return std::atan2(b.y - a.y, b.x - a.x);
  };
  const std::size_t k0 = segs.front().i0;  // first replacement vertex in `out`
  const std::size_t k1 = k0 + sp.path.size() - 1;
  const double seam_in = std::fabs(wrap_angle(heading(out.vertices[k0], out.vertices[k0 + 1]) -
                                              heading(out.vertices[k0 - 1], out.vertices[k0])));
  const double seam_out = std::fabs(wrap_angle(heading(out.vertices[k1], out.vertices[k1 + 1]) -
                                               heading(out.vertices[k1 - 1], out.vertices[k1])));
  CHECK(seam_in <= 20.0 * M_PI / 180.0 + 1e-6);
  CHECK(seam_out <= 20.0 * M_PI / 180.0 + 1e-6);
}

TEST_CASE("stitch_replace rejects drifting replacements") {
  const PathPolyline path =
      resample_uniform(PathPolyline({{0, 0}, {20, 0}}, VertexRole::Headland), 1.0);
  EdgySegment seg;
  seg.i0 = 5;
  seg.i1 = 15;
  SmoothedPath far;
  far.path = PathPolyline({{5, 3}, {15, 3}}, VertexRole::Headland);
  CHECK_THROWS_AS(stitch_replace(path, seg, far), StitchMismatch);
}
