#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fieldsmooth/errors.hpp"

namespace fieldsmooth {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double k) const { return {x * k, y * k}; }
  double dot(const Point2& o) const { return x * o.x + y * o.y; }
  double cross(const Point2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  Point2 normalized() const;
  Point2 left_normal() const { return {-y, x}; }
};

inline double distance(const Point2& a, const Point2& b) { return (b - a).norm(); }

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

enum class VertexRole { Headland, Lane, Transition };

/// Ordered planar polyline with per-vertex role labels and a cumulative
/// arclength table rebuilt from chord lengths.
struct PathPolyline {
  std::vector<Point2> vertices;
  std::vector<VertexRole> labels;
  std::vector<double> cumulative_s;

  PathPolyline() = default;
  PathPolyline(std::vector<Point2> pts, VertexRole role = VertexRole::Headland);
  PathPolyline(std::vector<Point2> pts, std::vector<VertexRole> roles);

  std::size_t size() const { return vertices.size(); }
  double length() const { return cumulative_s.empty() ? 0.0 : cumulative_s.back(); }

  /// Point at arclength s (clamped to [0, length]).
  Point2 point_at(double s) const;
  VertexRole label_at(double s) const;

  /// Distance from p to the nearest point of the polyline.
  double distance_to(const Point2& p) const;
  /// Arclength of the closest point of the polyline to p.
  double project_arclength(const Point2& p) const;

  void rebuild_arclength();
  void validate() const;
};

struct FrameSample {
  double s = 0.0;
  Point2 position;
  double heading = 0.0;    // unwrapped, rad
  double curvature = 0.0;  // signed, 1/m
};

/// Path-aligned coordinate system: per-sample (s, x, y, psi_s, kappa_s).
struct ReferenceFrame {
  std::vector<FrameSample> samples;

  std::size_t size() const { return samples.size(); }
  double length() const { return samples.empty() ? 0.0 : samples.back().s; }
  /// Spacing of interval j.
  double spacing(std::size_t j) const { return samples[j + 1].s - samples[j].s; }

  Point2 position_at(double s) const;
  double heading_at(double s) const;

  void validate() const;
};

struct FieldLayout {
  std::vector<Point2> contour;  // closed polygon, last vertex != first
  PathPolyline headland;        // closed loop
  std::vector<PathPolyline> lanes;
  double operating_width = 0.0;
};

// -- polyline operations ------------------------------------------------------

/// Resample at arclength multiples of `spacing`, keeping all original
/// vertices so total length is preserved exactly.
PathPolyline resample_uniform(const PathPolyline& path, double spacing);

/// Resample by chord-marching: every output vertex lies on the input polyline
/// at exact Euclidean distance `spacing` from its predecessor (last chord may
/// be shorter). Produces the uniform grids used for reference frames.
PathPolyline resample_chordal(const PathPolyline& path, double spacing);

/// Heading from averaged segment directions, curvature from the three-point
/// circumscribed circle; endpoints copy neighbour curvature.
ReferenceFrame build_frame(const PathPolyline& path);

/// Project p to the frame centerline: returns (s, e_y), e_y positive left of
/// the travel direction. Ambiguous projections resolve to the smaller s.
std::pair<double, double> project_to_frame(const ReferenceFrame& frame, const Point2& p);

/// Inverse of project_to_frame: global position and heading for path-aligned
/// coordinates (s, e_y, e_psi).
std::pair<Point2, double> frame_to_global(const ReferenceFrame& frame, double s, double e_y,
                                          double e_psi);

/// Inward offset (erosion) of a simple closed polygon. Throws EmptyOffset if
/// the erosion empties the polygon.
std::vector<Point2> inward_offset(const std::vector<Point2>& polygon, double dist);

/// Endpoint-preserving 1-2-1 averaging of interior vertices, `iterations`
/// times. Vertex count is unchanged.
PathPolyline corner_cut_smooth(const PathPolyline& path, int iterations);

// -- polygon helpers ----------------------------------------------------------

double polygon_area(const std::vector<Point2>& polygon);  // signed, CCW positive
bool point_in_polygon(const std::vector<Point2>& polygon, const Point2& p);
double distance_to_polygon_boundary(const std::vector<Point2>& polygon, const Point2& p);
bool polygon_is_simple(const std::vector<Point2>& polygon);

/// Distance from p to segment ab and the projection parameter t in [0,1].
double point_segment_distance(const Point2& p, const Point2& a, const Point2& b, double* t = nullptr);

/// Sum of absolute heading changes at interior vertices.
double total_turning(const PathPolyline& path);

}  // namespace fieldsmooth
