#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fieldsmooth/pipeline.hpp"

using namespace fieldsmooth;

TEST_CASE("config parsing applies known keys and rejects unknown ones") {
  RunConfig cfg;
  apply_config_line(cfg, "operating_width_m = 24");
  apply_config_line(cfg, "# a comment");
  apply_config_line(cfg, "");
  apply_config_line(cfg, "r_dubins_m=6.5");
  CHECK(cfg.operating_width_m == doctest::Approx(24.0));
  CHECK(cfg.r_dubins() == doctest::Approx(6.5));
  CHECK_THROWS_AS(apply_config_line(cfg, "no_such_key=1"), InputError);
  CHECK_THROWS_AS(apply_config_line(cfg, "not a key value pair"), InputError);
  CHECK_THROWS_AS(apply_config_line(cfg, "ds_m=abc"), InputError);
}

TEST_CASE("config validation") {
  RunConfig cfg;
  cfg.validate();
  CHECK(cfg.vehicle().min_turn_radius() == doctest::Approx(4.99).epsilon(0.01 / 4.99));
  cfg.ds_m = -1.0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = RunConfig{};
  cfg.raster_cell_m = 5.0;  // > width / 10
  CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("make_field_layout synthesises headland and lanes from a square contour") {
  RunConfig cfg;
  const FieldLayout layout =
      make_field_layout({{0, 0}, {200, 0}, {200, 200}, {0, 200}}, cfg);
  CHECK(std::fabs(polygon_area(layout.contour)) == doctest::Approx(200.0 * 200.0));
  // headland is the 10 m inward offset: a 180 x 180 loop
  std::vector<Point2> head = layout.headland.vertices;
  if (distance(head.front(), head.back()) < 1e-9) head.pop_back();
  CHECK(std::fabs(polygon_area(head)) == doctest::Approx(180.0 * 180.0).epsilon(1e-6));
  CHECK(layout.lanes.size() == 9);
  for (std::size_t k = 0; k + 1 < layout.lanes.size(); ++k) {
    const double dx = layout.lanes[k + 1].vertices.front().x - layout.lanes[k].vertices.front().x;
    CHECK(dx == doctest::Approx(20.0).epsilon(1e-6));
  }
}

TEST_CASE("make_field_layout rejects bad contours") {
  RunConfig cfg;
  CHECK_THROWS_AS(make_field_layout({{0, 0}, {1, 1}}, cfg), InputError);
  CHECK_THROWS_AS(make_field_layout({{0, 0}, {10, 10}, {10, 0}, {0, 10}}, cfg), InputError);
  // degree-like coordinate span
  CHECK_THROWS_AS(make_field_layout({{0, 0}, {0.001, 0}, {0.001, 0.001}, {0, 0.001}}, cfg),
                  InputError);
}

TEST_CASE("plan skeleton covers headland loop and all lanes") {
  RunConfig cfg;
  const FieldLayout layout = regression_field(cfg);
  const PathPolyline plan = build_plan_skeleton(layout, cfg);
  plan.validate();
  int junctions = 0;
  for (std::size_t i = 0; i + 1 < plan.size(); ++i) {
    const bool a = plan.labels[i] == VertexRole::Headland;
    const bool b = plan.labels[i + 1] == VertexRole::Headland;
    if (a != b) ++junctions;
  }
  CHECK(junctions == 2 * static_cast<int>(layout.lanes.size()));
}

TEST_CASE("full pipeline on the regression field smooths every instance") {
  RunConfig cfg;
  const FieldLayout layout = regression_field(cfg);
  const PipelineResult result = run_pipeline(layout, cfg);
  CHECK(result.report.failures() == 0);
  CHECK(result.report.rows.size() == 21);
  int corners = 0, transitions = 0, merged = 0;
  for (const InstanceReport& r : result.report.rows) {
    if (r.merged) ++merged;
    else if (r.kind == SegmentKind::HeadlandCorner) ++corners;
    else ++transitions;
    CHECK(r.max_ey < 2.0);
  }
  CHECK(corners == 3);
  CHECK(transitions == 17);
  CHECK(merged == 1);
  CHECK(result.raster.covered_cells() > 0);
}

TEST_CASE("smoothed plan has no remaining edgy headland corners") {
  RunConfig cfg;
  const FieldLayout layout = regression_field(cfg);
  const PipelineResult result = run_pipeline(layout, cfg);
  const auto segs = detect_edgy_segments(result.plan, cfg.theta_edge_deg * M_PI / 180.0,
                                         cfg.vehicle().min_turn_radius());
  for (const EdgySegment& s : segs) CHECK(s.kind != SegmentKind::HeadlandCorner);
}

TEST_CASE("plan GeoJSON round trip") {
  RunConfig cfg;
  const FieldLayout layout = regression_field(cfg);
  const PathPolyline plan = build_plan_skeleton(layout, cfg);
  std::stringstream buf;
  write_plan_geojson(plan, buf);
  const PathPolyline back = read_plan_geojson(buf);
  REQUIRE(back.size() == plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    CHECK(distance(back.vertices[i], plan.vertices[i]) < 1e-9);
    CHECK(back.labels[i] == plan.labels[i]);
  }
}

TEST_CASE("report aggregates equal row means") {
  RunReport rep;
  for (int i = 1; i <= 4; ++i) {
    InstanceReport r;
    r.n_vars = 10 * i;
    r.n_rows = 20 * i;
    r.solve_ms = 0.5 * i;
    r.ok = true;
    rep.rows.push_back(r);
  }
  CHECK(rep.mean_vars() == doctest::Approx(25.0));
  CHECK(rep.mean_rows() == doctest::Approx(50.0));
  CHECK(rep.mean_solve_ms() == doctest::Approx(1.25));
  CHECK(rep.failures() == 0);
}

TEST_CASE("report CSV lists every instance and the aggregate row") {
  RunConfig cfg;
  const FieldLayout layout = regression_field(cfg);
  const PipelineResult result = run_pipeline(layout, cfg);
  std::ostringstream csv;
  write_report_csv(result.report, csv);
  std::istringstream lines(csv.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == static_cast<int>(result.report.rows.size()) + 2);  // header + mean
}

TEST_CASE("figure SVG renders without NaN coordinates") {
  RunConfig cfg;
  const FieldLayout layout = regression_field(cfg);
  const PipelineResult result = run_pipeline(layout, cfg);
  std::ostringstream svg;
  write_figure_svg(result, layout, svg);
  const std::string s = svg.str();
  CHECK(s.find("nan") == std::string::npos);
  CHECK(s.find("inf") == std::string::npos);
  CHECK(s.rfind("<svg", 0) == 0);
}

TEST_CASE("CSV field loading matches the synthetic layout") {
  RunConfig cfg;
  const std::string file = "/tmp/fieldsmooth_test_contour.csv";
  {
    std::ofstream f(file);
    f << "# contour\n0,0\n200,0\n200,200\n0,200\n";
  }
  const FieldLayout layout = load_field(file, cfg);
  CHECK(layout.lanes.size() == 9);
  CHECK(std::fabs(polygon_area(layout.contour)) == doctest::Approx(40000.0));
}
