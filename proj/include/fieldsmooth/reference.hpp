#pragma once

#include <optional>
#include <vector>

#include "fieldsmooth/dubins.hpp"
#include "fieldsmooth/geometry.hpp"
#include "fieldsmooth/vehicle.hpp"

namespace fieldsmooth {

enum class SegmentKind { HeadlandCorner, HeadlandToLane, LaneToHeadland, LaneToLane };

std::string to_string(SegmentKind kind);

/// Vertex index range of an edgy stretch of a labelled path.
struct EdgySegment {
  std::size_t i0 = 0;
  std::size_t i1 = 0;  // inclusive
  SegmentKind kind = SegmentKind::HeadlandCorner;
  std::size_t apex = 0;   // corner apex vertex (corners only)
  bool merged = false;    // transition that absorbed an overlapping corner
};

enum class SideConstraint { None, Upper };
enum class ProblemType { HeadlandSmoothing, TransitionSmoothing };

/// Reference path for the LP step: frame plus the metadata the LP needs.
struct ReferencePath {
  ReferenceFrame frame;
  SegmentKind kind = SegmentKind::HeadlandCorner;
  ProblemType problem = ProblemType::HeadlandSmoothing;
  SideConstraint side_constraint = SideConstraint::None;
  std::optional<std::size_t> weight_index;
  double interior_sign = 1.0;  // +1 when +e_y (left of travel) points into the field
  double spacing = 1.0;        // D_s
  Config entry, exit;
};

/// Raised when the PWA5 tip construction cannot be anchored (reflex contour
/// corner); the caller is expected to fall back to a Dubins reference.
struct FallbackDubinsCorner : std::runtime_error {
  explicit FallbackDubinsCorner(const std::string& msg) : std::runtime_error(msg) {}
};

/// Edgy-vertex and label-change detection. Consecutive edgy vertices within
/// 3*r_min arclength merge into one segment; every headland<->lane label
/// change emits a transition segment. Output is disjoint and sorted by s.
std::vector<EdgySegment> detect_edgy_segments(const PathPolyline& path, double theta_thresh,
                                              double r_min);

/// Expands segments to the spans that will be replaced (corner_half each side
/// of a corner apex, transition_ext around a junction) and re-separates any
/// overlap. Overlapping corner/transition pairs merge into the transition.
void expand_segments(const PathPolyline& path, std::vector<EdgySegment>& segments,
                     double corner_half, double transition_ext);

/// 5-point PWA corner reference (anchors A,B,T,D,E) interpolated at ds and
/// smoothed with two corner-cut iterations. side_constraint = Upper with the
/// field-interior side constrained.
ReferencePath build_pwa5_reference(const EdgySegment& segment, const PathPolyline& path,
                                   const std::vector<Point2>& contour, double w,
                                   const VehicleParams& params, double ds,
                                   int corner_cut_iterations = 2);

/// Dubins reference between the segment boundary configurations with straight
/// extensions of length l_ext at both ends.
ReferencePath build_dubins_reference(const EdgySegment& segment, const PathPolyline& path,
                                     double r_dubins, double l_ext, double ds);

/// Index I of the weighted objective: last (headland->lane) or first
/// (lane->headland) sample within `radius` of the headland path.
std::size_t compute_weight_index(const ReferencePath& ref, const PathPolyline& headland,
                                 double radius = 1.0);

/// Default straight-extension length: 0.5 * R_Dubins clamped to [2 m, 5 m].
double default_extension_length(double r_dubins);

/// Arclength a transition segment extends to each side of its junction; large
/// enough that the Dubins fit is a simple fillet rather than a loop.
double transition_half_length(double r_dubins);

}  // namespace fieldsmooth
