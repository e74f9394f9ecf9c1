#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fieldsmooth/coverage.hpp"
#include "fieldsmooth/reference.hpp"
#include "fieldsmooth/smoother.hpp"

namespace fieldsmooth {

/// User-facing configuration. Angles in degrees and speed in km/h at this
/// boundary only; vehicle() converts once.
struct RunConfig {
  double wheelbase_m = 3.0;
  double delta_max_deg = 31.0;
  double ddelta_max_deg_s = 15.0;
  double v_ref_kmh = 5.0;
  double ds_m = 1.0;
  double operating_width_m = 20.0;
  std::optional<double> r_dubins_m;  // default: minimum turning radius
  double theta_edge_deg = 20.0;
  double raster_cell_m = 0.1;
  int corner_cut_iterations = 2;

  VehicleParams vehicle() const;
  double r_dubins() const;
  double edge_half_length() const;  // corner replacement half-span
  void validate() const;
};

/// Applies `key=value` lines to a config. Unknown keys raise InputError.
void apply_config_line(RunConfig& cfg, const std::string& line);
void load_config_file(RunConfig& cfg, const std::string& path);

struct InstanceReport {
  SegmentKind kind = SegmentKind::HeadlandCorner;
  std::size_t i0 = 0, i1 = 0;  // span on the unsmoothed plan
  int n_intervals = 0;
  int n_vars = 0;
  int n_rows = 0;
  double solve_ms = 0.0;
  double max_ey = 0.0;      // max |e_y| of the LP solution vs its reference
  double pathlength = 0.0;  // smoothed replacement length
  Point2 box_lo, box_hi;    // replacement bounding box (figure zoom frames)
  bool merged = false;      // transition that absorbed an adjacent corner
  bool ok = false;
  std::string message;
};

struct RunReport {
  std::vector<InstanceReport> rows;

  int failures() const;
  double mean_vars() const;
  double mean_rows() const;
  double mean_solve_ms() const;
};

/// Field geometry ingestion: GeoJSON FeatureCollection (polygon role=contour,
/// optional linestrings role=headland/lane) or CSV contour points. Missing
/// headland/lanes are synthesised from the contour and operating width.
FieldLayout load_field(const std::string& file, const RunConfig& cfg);

/// Synthesises headland (inward offset by w/2) and straight vertical lanes at
/// spacing w from a bare contour.
FieldLayout make_field_layout(std::vector<Point2> contour, const RunConfig& cfg);

/// The shipped regression field: slanted quadrilateral, four near-90 corners,
/// 9 lanes / 18 headland<->lane transitions at the default width.
FieldLayout regression_field(const RunConfig& cfg);

/// Unsmoothed labeled plan: full headland loop, then boustrophedon lanes with
/// straight headland connectors and a short headland tail.
PathPolyline build_plan_skeleton(const FieldLayout& layout, const RunConfig& cfg);

struct PipelineResult {
  PathPolyline plan;
  RunReport report;
  CoverageRaster raster;
};

/// Detects every edgy segment of the skeleton plan and replaces it with its
/// LP-smoothed counterpart. Instance failures are recorded and skipped.
PipelineResult run_pipeline(const FieldLayout& layout, const RunConfig& cfg);

void emit_outputs(const PipelineResult& result, const FieldLayout& layout,
                  const std::string& out_dir);

void write_plan_geojson(const PathPolyline& plan, std::ostream& os);
PathPolyline read_plan_geojson(std::istream& is);
void write_report_csv(const RunReport& report, std::ostream& os);
void write_figure_svg(const PipelineResult& result, const FieldLayout& layout, std::ostream& os);

struct SweepRow {
  double radius = 0.0;
  int instances = 0;
  double mean_max_ey = 0.0;
  double max_max_ey = 0.0;
};

/// Re-runs the transition instances of a field for each Dubins radius.
std::vector<SweepRow> sweep_dubins_radius(const FieldLayout& layout, const RunConfig& cfg,
                                          const std::vector<double>& radii);

}  // namespace fieldsmooth
