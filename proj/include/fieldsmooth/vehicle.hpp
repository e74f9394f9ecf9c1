#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fieldsmooth/geometry.hpp"

namespace fieldsmooth {

struct VehicleParams {
  double wheelbase = 3.0;                  // m
  double delta_max = 31.0 * M_PI / 180.0;  // rad
  double delta_min = -31.0 * M_PI / 180.0;
  double ddelta_max = 15.0 * M_PI / 180.0;  // rad/s
  double ddelta_min = -15.0 * M_PI / 180.0;
  double v_ref = 5.0 / 3.6;  // m/s

  double min_turn_radius() const { return wheelbase / std::tan(delta_max); }
  /// Steering-rate bound per meter of travel at v_ref.
  double ddelta_per_meter() const { return ddelta_max / v_ref; }
  void validate() const;
};

struct TimeState {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double delta = 0.0;
};

/// Path-aligned state z = (e_psi, e_y).
struct SpatialState {
  double e_psi = 0.0;
  double e_y = 0.0;
};

using Mat2 = std::array<std::array<double, 2>, 2>;
using Vec2 = std::array<double, 2>;

/// Linearised, ZOH-discretised spatial dynamics along a reference:
/// z_{j+1} = A_j z_j + B_j (delta_j - delta_nom_j) + d_j.
struct LtvSpatialSystem {
  std::vector<Mat2> A;
  std::vector<Vec2> B;
  std::vector<Vec2> d;              // affine residual, zero at the chosen operating point
  std::vector<double> delta_nom;    // nominal steering per interval, rad
  std::vector<double> spacing;      // D_s,j per interval, m
  std::size_t horizon() const { return A.size(); }
};

/// Time-domain kinematic bicycle: returns (x_dot, y_dot, psi_dot).
std::array<double, 3> time_derivative(const TimeState& state, double v, double delta,
                                      const VehicleParams& params);

/// Spatial-domain bicycle: returns (e_psi', e_y') for reference curvature
/// kappa_s. Throws ModelSingularity when e_y * kappa_s >= 1.
std::array<double, 2> spatial_derivative(const SpatialState& z, double delta, double kappa_s,
                                         const VehicleParams& params);

/// Linearise about (e_psi, e_y) = 0 with nominal steering arctan(l * kappa_j)
/// per interval and discretise exactly over each spacing.
LtvSpatialSystem linearize_and_discretize(const ReferenceFrame& frame,
                                          const VehicleParams& params);

/// Closed-form ZOH pair (A_d, B_d) for curvature kappa over spacing ds.
std::pair<Mat2, Vec2> zoh_step(double kappa, double ds, const VehicleParams& params);

/// Integrate the nonlinear spatial model with piecewise-constant steering,
/// fixed-step RK4, 10 substeps per interval. steering.size() must equal the
/// number of frame intervals.
std::vector<SpatialState> rollout_spatial(const ReferenceFrame& frame, const SpatialState& z0,
                                          const std::vector<double>& steering,
                                          const VehicleParams& params);

struct SaturatedSimResult {
  std::vector<TimeState> trajectory;
  double envelope_radius = 0.0;  // minimal enclosing circle of one full turn
  Point2 envelope_center;
};

/// Full-turn simulation with the steering rate saturated towards delta_max at
/// every sampling instant.
SaturatedSimResult saturated_steering_simulation(const VehicleParams& params, double ts, double v,
                                                 double delta0);

/// Minimal enclosing circle (center, radius).
std::pair<Point2, double> minimal_enclosing_circle(const std::vector<Point2>& points);

}  // namespace fieldsmooth
