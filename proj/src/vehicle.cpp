#include "fieldsmooth/vehicle.hpp"

#include <algorithm>
#include <random>

namespace fieldsmooth {

void VehicleParams::validate() const {
  if (wheelbase <= 0.0) throw InvalidPath("wheelbase must be positive");
  if (delta_max <= 0.0 || delta_max >= M_PI / 2.0) throw InvalidPath("delta_max out of (0, pi/2)");
  if (ddelta_max <= 0.0) throw InvalidPath("ddelta_max must be positive");
  if (v_ref <= 0.0) throw InvalidPath("v_ref must be positive");
}

std::array<double, 3> time_derivative(const TimeState& state, double v, double delta,
                                      const VehicleParams& params) {
  return {v * std::cos(state.psi), v * std::sin(state.psi),
          v / params.wheelbase * std::tan(delta)};
}

std::array<double, 2> spatial_derivative(const SpatialState& z, double delta, double kappa_s,
                                         const VehicleParams& params) {
  const double margin = 1.0 - z.e_y * kappa_s;
  if (margin <= 0.0) throw ModelSingularity("e_y * kappa_s >= 1");
  const double e_psi_prime =
      margin * std::tan(delta) / (params.wheelbase * std::cos(z.e_psi)) - kappa_s;
  const double e_y_prime = margin * std::tan(z.e_psi);
  return {e_psi_prime, e_y_prime};
}

std::pair<Mat2, Vec2> zoh_step(double kappa, double ds, const VehicleParams& params) {
  const double l = params.wheelbase;
  const double b = (1.0 + (l * kappa) * (l * kappa)) / l;
  Mat2 A;
  Vec2 B;
  if (std::fabs(kappa) < 1e-12) {
    A = {{{1.0, 0.0}, {ds, 1.0}}};
    B = {ds / l, ds * ds / (2.0 * l)};
  } else {
    const double kd = kappa * ds;
    const double c = std::cos(kd);
    const double s = std::sin(kd);
    A = {{{c, -kappa * s}, {s / kappa, c}}};
    B = {b * s / kappa, b * (1.0 - c) / (kappa * kappa)};
  }
  return {A, B};
}

LtvSpatialSystem linearize_and_discretize(const ReferenceFrame& frame,
                                          const VehicleParams& params) {
  frame.validate();
  params.validate();

  LtvSpatialSystem sys;
  const std::size_t n_int = frame.samples.size() - 1;
  sys.A.reserve(n_int);
  sys.B.reserve(n_int);
  sys.d.reserve(n_int);
  sys.delta_nom.reserve(n_int);
  sys.spacing.reserve(n_int);

  const double l = params.wheelbase;
  for (std::size_t j = 0; j < n_int; ++j) {
    const double kappa = frame.samples[j].curvature;
    double delta_nom = std::atan(l * kappa);
    if (!std::isfinite(delta_nom))
      throw InfeasibleReference("reference curvature is not finite");
    // references sharper than the steering range (e.g. a corner-cut tip) are
    // linearised at the saturated operating point instead; the unreachable
    // remainder becomes a nonzero affine residual rather than exploding gains
    delta_nom = std::clamp(delta_nom, params.delta_min, params.delta_max);
    const double kappa_eff = std::tan(delta_nom) / l;
    const double ds = frame.spacing(j);
    const double b = (1.0 + (l * kappa_eff) * (l * kappa_eff)) / l;
    const double resid = kappa_eff - kappa;  // e_psi drift at the operating point

    // exact ZOH of z' = [[0, -kappa*kappa_eff], [1, 0]] z + [b, 0] u + [resid, 0]
    const double a = kappa * kappa_eff;
    Mat2 A;
    Vec2 intg;  // integral of the state transition, first column
    if (a < 1e-24) {
      A = {{{1.0, 0.0}, {ds, 1.0}}};
      intg = {ds, 0.5 * ds * ds};
    } else {
      const double om = std::sqrt(a);
      const double c = std::cos(om * ds);
      const double s = std::sin(om * ds);
      A = {{{c, -om * s}, {s / om, c}}};
      intg = {s / om, (1.0 - c) / (om * om)};
    }
    sys.A.push_back(A);
    sys.B.push_back({b * intg[0], b * intg[1]});
    sys.d.push_back({resid * intg[0], resid * intg[1]});
    sys.delta_nom.push_back(delta_nom);
    sys.spacing.push_back(ds);
  }
  return sys;
}

std::vector<SpatialState> rollout_spatial(const ReferenceFrame& frame, const SpatialState& z0,
                                          const std::vector<double>& steering,
                                          const VehicleParams& params) {
  frame.validate();
  const std::size_t n_int = frame.samples.size() - 1;
  if (steering.size() != n_int) throw InvalidPath("steering length must equal frame intervals");

  std::vector<SpatialState> out;
  out.reserve(n_int + 1);
  out.push_back(z0);
  SpatialState z = z0;
  constexpr int kSubsteps = 10;
  for (std::size_t j = 0; j < n_int; ++j) {
    const double kappa = frame.samples[j].curvature;
    const double delta = steering[j];
    const double h = frame.spacing(j) / kSubsteps;
    for (int k = 0; k < kSubsteps; ++k) {
      try {
        const auto f = [&](const SpatialState& zz) {
          return spatial_derivative(zz, delta, kappa, params);
        };
        const auto k1 = f(z);
        const auto k2 = f({z.e_psi + 0.5 * h * k1[0], z.e_y + 0.5 * h * k1[1]});
        const auto k3 = f({z.e_psi + 0.5 * h * k2[0], z.e_y + 0.5 * h * k2[1]});
        const auto k4 = f({z.e_psi + h * k3[0], z.e_y + h * k3[1]});
        z.e_psi += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        z.e_y += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
      } catch (const ModelSingularity&) {
        throw ModelSingularity("model singularity at interval " + std::to_string(j));
      }
    }
    out.push_back(z);
  }
  return out;
}

// -- minimal enclosing circle (Welzl) ----------------------------------------

namespace {

struct Circle {
  Point2 c;
  double r = 0.0;
};

bool in_circle(const Circle& c, const Point2& p) { return distance(c.c, p) <= c.r + 1e-9; }

Circle circle_two(const Point2& a, const Point2& b) {
  const Point2 c = (a + b) * 0.5;
  return {c, distance(a, b) * 0.5};
}

Circle circle_three(const Point2& a, const Point2& b, const Point2& c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  if (std::fabs(d) < 1e-12) {
    // collinear: fall back to the widest two-point circle
    Circle best = circle_two(a, b);
    for (const Circle& cand : {circle_two(a, c), circle_two(b, c)})
      if (cand.r > best.r) best = cand;
    return best;
  }
  const double ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d;
  const double uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d;
  const Point2 center{a.x + ux, a.y + uy};
  return {center, distance(center, a)};
}

Circle welzl(std::vector<Point2>& pts) {
  Circle circ{{0, 0}, -1.0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (circ.r >= 0.0 && in_circle(circ, pts[i])) continue;
    circ = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (in_circle(circ, pts[j])) continue;
      circ = circle_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (in_circle(circ, pts[k])) continue;
        circ = circle_three(pts[i], pts[j], pts[k]);
      }
    }
  }
  return circ;
}

}  // namespace

std::pair<Point2, double> minimal_enclosing_circle(const std::vector<Point2>& points) {
  if (points.empty()) return {{0, 0}, 0.0};
  std::vector<Point2> pts = points;
  std::mt19937 rng(12345);  // fixed seed, deterministic
  std::shuffle(pts.begin(), pts.end(), rng);
  const Circle c = welzl(pts);
  return {c.c, c.r};
}

SaturatedSimResult saturated_steering_simulation(const VehicleParams& params, double ts, double v,
                                                 double delta0) {
  params.validate();
  if (ts <= 0.0) throw InvalidPath("sampling time must be positive");
  if (std::fabs(delta0) > params.delta_max + 1e-12) throw InvalidPath("delta0 outside bounds");

  SaturatedSimResult res;
  TimeState st{0.0, 0.0, 0.0, delta0};
  res.trajectory.push_back(st);
  // run until the steady-turn portion alone spans a full revolution, so the
  // envelope sees the complete final circle plus the ramp-in transient
  double psi_lock = st.psi;
  bool locked = st.delta >= params.delta_max - 1e-12;
  Point2 steady_center;
  bool have_center = false;
  const int max_steps = static_cast<int>(1e7);
  for (int step = 0; step < max_steps; ++step) {
    if (locked && std::fabs(st.psi - psi_lock) >= 2.0 * M_PI) break;
    // steering command applied at the sampling instant, then exact arc update
    // over one interval at constant steering
    st.delta = std::min(st.delta + ts * params.ddelta_max, params.delta_max);
    if (!locked && st.delta >= params.delta_max - 1e-12) {
      locked = true;
      psi_lock = st.psi;
    }
    const double psi_dot = v / params.wheelbase * std::tan(st.delta);
    if (std::fabs(psi_dot) < 1e-12) {
      st.x += v * ts * std::cos(st.psi);
      st.y += v * ts * std::sin(st.psi);
    } else {
      const double r = v / psi_dot;
      const double psi_new = st.psi + psi_dot * ts;
      st.x += r * (std::sin(psi_new) - std::sin(st.psi));
      st.y += r * (std::cos(st.psi) - std::cos(psi_new));
      st.psi = psi_new;
    }
    res.trajectory.push_back(st);
    if (locked && !have_center) {
      // turning circle of the steady full-lock phase
      const double r_min = params.wheelbase / std::tan(params.delta_max);
      steady_center = Point2{st.x, st.y} +
                      Point2{-std::sin(st.psi), std::cos(st.psi)} * r_min;
      have_center = true;
    }
  }

  // envelope: smallest circle concentric with the steady-turn circle that
  // contains the whole maneuver, ramp-in included
  res.envelope_center = steady_center;
  res.envelope_radius = 0.0;
  for (const TimeState& t : res.trajectory)
    res.envelope_radius =
        std::max(res.envelope_radius, distance({t.x, t.y}, steady_center));
  return res;
}

}  // namespace fieldsmooth
