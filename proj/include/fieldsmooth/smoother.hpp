#pragma once

#include "fieldsmooth/lp.hpp"
#include "fieldsmooth/reference.hpp"
#include "fieldsmooth/vehicle.hpp"

namespace fieldsmooth {

/// Condensed affine prediction of the lateral offset along a reference:
/// e_y_j = offset_const[j-1] + sum_k offset_gain[j-1][k] * delta_k, j = 1..N.
struct CondensedPrediction {
  std::vector<std::vector<double>> offset_gain;  // N x N, lower triangular
  std::vector<double> offset_const;              // N
  std::size_t horizon() const { return offset_const.size(); }
};

CondensedPrediction condense(const LtvSpatialSystem& sys, const SpatialState& z0);

struct SmootherOptions {
  double slack_weight = 1e16;
  double near_weight = 100.0;  // objective weight on the headland-side samples
  double far_weight = 1.0;
  int refinement_passes = 1;  // extra linearise-and-resolve rounds (corners only)
};

/// min-deviation LP with a hard interior-side constraint (slack sigma).
/// Variables [delta(N), t(N), sigma].
LinearProgram build_lp_problem1(const CondensedPrediction& pred, const LtvSpatialSystem& sys,
                                const ReferencePath& ref, const VehicleParams& params,
                                const SmootherOptions& opts);

/// weighted absolute-deviation LP, variables [delta(N), t(N)].
LinearProgram build_lp_problem2(const CondensedPrediction& pred, const LtvSpatialSystem& sys,
                                const ReferencePath& ref, const VehicleParams& params,
                                const SmootherOptions& opts);

struct SmoothedPath {
  PathPolyline path;             // globally-positioned smoothed vertices
  std::vector<double> steering;  // per interval, rad
  ReferenceFrame frame;          // frame the final solve was linearised on

  // diagnostics
  double objective = 0.0;
  double slack = 0.0;            // sigma (problem 1 only)
  double max_offset = 0.0;       // max |e_y| of the path vs the caller's reference
  double rollout_mismatch = 0.0; // max |e_y_linear - e_y_nonlinear|
  int lp_vars = 0;
  int lp_rows = 0;
  int iterations = 0;
};

/// Solves the smoothing LP for a reference path. Corner problems run one
/// extra pass: the solution is re-gridded, re-linearised and solved again.
SmoothedPath solve_smoothing(const ReferencePath& ref, const VehicleParams& params,
                             const SmootherOptions& opts = {});

/// Replaces vertices [i0, i1] of `original` with the smoothed vertices.
/// Throws StitchMismatch when the smoothed endpoints stray from the
/// replaced span's endpoints by more than `tol`.
PathPolyline stitch_replace(const PathPolyline& original, const EdgySegment& segment,
                            const SmoothedPath& smoothed, double tol = 0.75);

}  // namespace fieldsmooth
