#include "fieldsmooth/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fieldsmooth {

CondensedPrediction condense(const LtvSpatialSystem& sys, const SpatialState& z0) {
  const std::size_t n = sys.horizon();
  CondensedPrediction pred;
  pred.offset_gain.assign(n, std::vector<double>(n, 0.0));
  pred.offset_const.assign(n, 0.0);

  // z_{j+1} = A_j z_j + B_j (delta_j - delta_nom_j); propagate the affine map
  // z_j = P_j delta + q_j and keep the e_y component of every step.
  std::array<double, 2> q = {z0.e_psi, z0.e_y};
  std::vector<std::array<double, 2>> gains;  // per active column: effect on z
  gains.reserve(n);

  for (std::size_t j = 0; j < n; ++j) {
    const Mat2& A = sys.A[j];
    const Vec2& B = sys.B[j];
    for (auto& g : gains) {
      const double g0 = g[0], g1 = g[1];
      g[0] = A[0][0] * g0 + A[0][1] * g1;
      g[1] = A[1][0] * g0 + A[1][1] * g1;
    }
    const double q0 = q[0], q1 = q[1];
    q[0] = A[0][0] * q0 + A[0][1] * q1 - B[0] * sys.delta_nom[j] + sys.d[j][0];
    q[1] = A[1][0] * q0 + A[1][1] * q1 - B[1] * sys.delta_nom[j] + sys.d[j][1];
    gains.push_back({B[0], B[1]});

    for (std::size_t k = 0; k < gains.size(); ++k) pred.offset_gain[j][k] = gains[k][1];
    pred.offset_const[j] = q[1];
  }
  return pred;
}

namespace {

double sample_weight(const ReferencePath& ref, std::size_t j, const SmootherOptions& opts) {
  if (!ref.weight_index) return opts.far_weight;
  const std::size_t split = *ref.weight_index;
  const bool near_headland = ref.kind == SegmentKind::HeadlandToLane ? j <= split : j >= split;
  return near_headland ? opts.near_weight : opts.far_weight;
}

void add_rate_rows(LinearProgram& lp, const LtvSpatialSystem& sys, const VehicleParams& params) {
  const int n = static_cast<int>(sys.horizon());
  for (int j = 0; j + 1 < n; ++j) {
    const double up = sys.spacing[j] * params.ddelta_max / params.v_ref;
    const double lo = sys.spacing[j] * params.ddelta_min / params.v_ref;
    int r = lp.add_row(up);
    lp.set_entry(r, j + 1, 1.0);
    lp.set_entry(r, j, -1.0);
    r = lp.add_row(-lo);
    lp.set_entry(r, j + 1, -1.0);
    lp.set_entry(r, j, 1.0);
  }
}

}  // namespace

LinearProgram build_lp_problem1(const CondensedPrediction& pred, const LtvSpatialSystem& sys,
                                const ReferencePath& ref, const VehicleParams& params,
                                const SmootherOptions& opts) {
  const int n = static_cast<int>(pred.horizon());
  LinearProgram lp;
  lp.resize(2 * n + 1);
  const int sigma = 2 * n;
  for (int j = 0; j < n; ++j) {
    lp.lower[j] = params.delta_min;
    lp.upper[j] = params.delta_max;
    lp.lower[n + j] = 0.0;
    lp.cost[n + j] = sample_weight(ref, static_cast<std::size_t>(j) + 1, opts);
  }
  lp.lower[sigma] = 0.0;
  lp.cost[sigma] = opts.slack_weight;

  // eta * e_y points into the field interior; the path may not cut inside the
  // reference (up to the slack), which is what guarantees the swath still
  // reaches the corner region. Deviation towards the boundary is penalised
  // through t.
  const double eta = ref.interior_sign;
  for (int j = 0; j < n; ++j) {
    const auto& m = pred.offset_gain[j];
    const double k = pred.offset_const[j];
    int r = lp.add_row(eta * k);  // -eta e_y_{j+1} <= t_{j+1}
    for (int c = 0; c <= j; ++c)
      if (m[c] != 0.0) lp.set_entry(r, c, -eta * m[c]);
    lp.set_entry(r, n + j, -1.0);
    r = lp.add_row(-eta * k);  // eta e_y_{j+1} <= sigma
    for (int c = 0; c <= j; ++c)
      if (m[c] != 0.0) lp.set_entry(r, c, eta * m[c]);
    lp.set_entry(r, sigma, -1.0);
  }
  add_rate_rows(lp, sys, params);
  return lp;
}

LinearProgram build_lp_problem2(const CondensedPrediction& pred, const LtvSpatialSystem& sys,
                                const ReferencePath& ref, const VehicleParams& params,
                                const SmootherOptions& opts) {
  const int n = static_cast<int>(pred.horizon());
  LinearProgram lp;
  lp.resize(2 * n);
  for (int j = 0; j < n; ++j) {
    lp.lower[j] = params.delta_min;
    lp.upper[j] = params.delta_max;
    lp.lower[n + j] = 0.0;
    lp.cost[n + j] = sample_weight(ref, static_cast<std::size_t>(j) + 1, opts);
  }
  for (int j = 0; j < n; ++j) {
    const auto& m = pred.offset_gain[j];
    const double k = pred.offset_const[j];
    int r = lp.add_row(-k);  // e_y_{j+1} <= t_{j+1}
    for (int c = 0; c <= j; ++c)
      if (m[c] != 0.0) lp.set_entry(r, c, m[c]);
    lp.set_entry(r, n + j, -1.0);
    r = lp.add_row(k);  // -e_y_{j+1} <= t_{j+1}
    for (int c = 0; c <= j; ++c)
      if (m[c] != 0.0) lp.set_entry(r, c, -m[c]);
    lp.set_entry(r, n + j, -1.0);
  }
  add_rate_rows(lp, sys, params);
  return lp;
}

namespace {

// The deviation objective alone leaves the steering sequence underdetermined:
// many vertices reach the same deviation cost, some with large zig-zags that
// the linear model cancels but the true dynamics do not. Re-solve with the
// objective pinned at its optimum, minimising the total variation of the
// steering, and keep the original solution if the refinement fails.
LpSolution smoothest_tiebreak(const LinearProgram& base, const LpSolution& sol, std::size_t n) {
  LinearProgram lp = base;
  const int n0 = lp.num_vars();
  double obj = 0.0;
  for (int j = 0; j < n0; ++j) obj += lp.cost[j] * sol.x[j];
  const int pin = lp.add_row(obj + 1e-9 * (1.0 + std::fabs(obj)));
  for (int j = 0; j < n0; ++j)
    if (lp.cost[j] != 0.0) lp.set_entry(pin, j, lp.cost[j]);

  const int nr = static_cast<int>(n) - 1;
  lp.cost.assign(n0 + nr, 0.0);
  lp.lower.resize(n0 + nr, 0.0);
  lp.upper.resize(n0 + nr, kInf);
  for (int j = 0; j < nr; ++j) {
    lp.cost[n0 + j] = 1.0;
    int r = lp.add_row(0.0);  // delta_{j+1} - delta_j <= r_j
    lp.set_entry(r, j + 1, 1.0);
    lp.set_entry(r, j, -1.0);
    lp.set_entry(r, n0 + j, -1.0);
    r = lp.add_row(0.0);  // delta_j - delta_{j+1} <= r_j
    lp.set_entry(r, j + 1, -1.0);
    lp.set_entry(r, j, 1.0);
    lp.set_entry(r, n0 + j, -1.0);
  }
  LpSolution refined = solve(lp);
  if (refined.status != LpStatus::Optimal) return sol;
  refined.x.resize(n0);
  refined.objective = 0.0;
  for (int j = 0; j < n0; ++j) refined.objective += base.cost[j] * refined.x[j];
  refined.iterations += sol.iterations;
  return refined;
}

SpatialState initial_state(const ReferenceFrame& frame, const Config& entry) {
  const FrameSample& s0 = frame.samples.front();
  const Point2 left{-std::sin(s0.heading), std::cos(s0.heading)};
  SpatialState z0;
  z0.e_psi = wrap_angle(entry.heading - s0.heading);
  z0.e_y = (entry.position - s0.position).dot(left);
  return z0;
}

}  // namespace

SmoothedPath solve_smoothing(const ReferencePath& ref, const VehicleParams& params,
                             const SmootherOptions& opts) {
  ref.frame.validate();
  const bool corner = ref.problem == ProblemType::HeadlandSmoothing;
  // the extra pass re-linearises about the first solution; its reference has
  // continuous curvature, so the steering stays near nominal and the linear
  // certificate holds tightly on the emitted path
  const int passes = 1 + std::max(0, opts.refinement_passes);

  SmoothedPath best;
  bool have_best = false;
  int total_iterations = 0;
  SmoothedPath out;
  ReferenceFrame frame = ref.frame;
  for (int pass = 0; pass < passes; ++pass) {
    const LtvSpatialSystem sys = linearize_and_discretize(frame, params);
    const SpatialState z0 = initial_state(frame, ref.entry);
    const CondensedPrediction pred = condense(sys, z0);
    const LinearProgram lp = corner ? build_lp_problem1(pred, sys, ref, params, opts)
                                    : build_lp_problem2(pred, sys, ref, params, opts);
    LpSolution sol;
    if (corner) {
      // the slack weight is far beyond double precision next to unit deviation
      // costs; solve the same preemption lexicographically instead of big-M:
      // minimise the slack first, then the deviations with the slack pinned
      LinearProgram lp1 = lp;
      std::fill(lp1.cost.begin(), lp1.cost.end(), 0.0);
      lp1.cost.back() = 1.0;
      const LpSolution s1 = solve(lp1);
      if (s1.status != LpStatus::Optimal)
        throw InfeasibleReference("slack minimisation did not reach an optimum");
      LinearProgram lp2 = lp;
      lp2.cost.back() = 0.0;
      lp2.upper.back() = s1.x.back() + 1e-9 * (1.0 + s1.x.back());
      sol = solve(lp2);
      sol.iterations += s1.iterations;
      if (sol.status == LpStatus::Optimal) {
        sol = smoothest_tiebreak(lp2, sol, pred.horizon());
        sol.objective += opts.slack_weight * sol.x.back();
      }
    } else {
      sol = solve(lp);
      if (sol.status == LpStatus::Optimal) sol = smoothest_tiebreak(lp, sol, pred.horizon());
    }
    if (sol.status != LpStatus::Optimal)
      throw InfeasibleReference("smoothing LP did not reach an optimum");

    const std::size_t n = pred.horizon();
    std::vector<double> delta(sol.x.begin(), sol.x.begin() + n);

    // linear-model state sequence: this is the path the LP optimised
    std::vector<SpatialState> lin(n + 1, z0);
    for (std::size_t j = 0; j < n; ++j) {
      const Mat2& A = sys.A[j];
      const Vec2& B = sys.B[j];
      const double u = delta[j] - sys.delta_nom[j];
      lin[j + 1].e_psi =
          A[0][0] * lin[j].e_psi + A[0][1] * lin[j].e_y + B[0] * u + sys.d[j][0];
      lin[j + 1].e_y =
          A[1][0] * lin[j].e_psi + A[1][1] * lin[j].e_y + B[1] * u + sys.d[j][1];
    }
    // nonlinear rollout is diagnostic only; a singular rollout (offset reaches
    // the local curvature centre) just means the linearisation is untrustworthy
    // there, which the mismatch value should report rather than abort on
    std::vector<SpatialState> states;
    try {
      states = rollout_spatial(frame, z0, delta, params);
    } catch (const ModelSingularity&) {
      states.clear();
    }

    PathPolyline poly;
    poly.vertices.reserve(n + 1);
    const VertexRole role = corner ? VertexRole::Headland : VertexRole::Transition;
    for (std::size_t j = 0; j <= n; ++j) {
      const auto [p, psi] =
          frame_to_global(frame, frame.samples[j].s, lin[j].e_y, lin[j].e_psi);
      (void)psi;
      poly.vertices.push_back(p);
      poly.labels.push_back(role);
    }
    poly.rebuild_arclength();

    out.path = std::move(poly);
    out.steering = std::move(delta);
    out.frame = frame;
    out.objective = sol.objective;
    out.slack = corner ? sol.x.back() : 0.0;
    out.lp_vars = lp.num_vars();
    out.lp_rows = lp.num_rows();
    total_iterations += sol.iterations;
    out.iterations = total_iterations;
    double lin_max = 0.0;
    for (std::size_t j = 0; j <= n; ++j) lin_max = std::max(lin_max, std::fabs(lin[j].e_y));
    out.rollout_mismatch = states.empty() ? std::numeric_limits<double>::infinity() : 0.0;
    if (!states.empty())
      for (std::size_t j = 0; j <= n; ++j)
        out.rollout_mismatch =
            std::max(out.rollout_mismatch, std::fabs(lin[j].e_y - states[j].e_y));

    bool accept;
    if (corner) {
      // projecting onto the folded tip reference is ambiguous, so corners use
      // the linear prediction against the pass frame; refinement on a milder
      // reference usually helps, but a reconstruction that folds back on
      // itself diverges, so keep the best pass and stop once it stops improving
      out.max_offset = lin_max;
      accept = !have_best || out.max_offset < best.max_offset;
    } else {
      // transitions report the deviation from the caller's reference so the
      // number keeps its meaning across refinement passes; the refined pass is
      // taken only when it tightens the linear certificate without drifting
      out.max_offset = 0.0;
      for (const Point2& p : out.path.vertices)
        out.max_offset =
            std::max(out.max_offset, std::fabs(project_to_frame(ref.frame, p).second));
      accept = !have_best || (out.rollout_mismatch < best.rollout_mismatch &&
                              out.max_offset <= best.max_offset + 0.05);
    }
    if (accept) {
      best = out;
      have_best = true;
    } else {
      break;
    }

    if (pass + 1 < passes) {
      // re-grid the solution as next reference; corners get a mild corner-cut
      // to kill grid-scale kinks near the tip, transitions must not (the cut
      // systematically shrinks curved sections and would drag the next pass
      // off the reference)
      PathPolyline regridded = resample_chordal(out.path, ref.spacing);
      if (corner) regridded = corner_cut_smooth(regridded, 2);
      frame = build_frame(regridded);
    }
  }
  best.iterations = total_iterations;
  return best;
}

PathPolyline stitch_replace(const PathPolyline& original, const EdgySegment& segment,
                            const SmoothedPath& smoothed, double tol) {
  original.validate();
  if (segment.i1 >= original.size() || segment.i0 > segment.i1)
    throw InvalidPath("segment out of range");
  const PathPolyline& rep = smoothed.path;
  if (rep.size() < 2) throw InvalidPath("replacement path too short");
  if (distance(original.vertices[segment.i0], rep.vertices.front()) > tol ||
      distance(original.vertices[segment.i1], rep.vertices.back()) > tol)
    throw StitchMismatch("replacement endpoints do not meet the original path");

  PathPolyline out;
  out.vertices.reserve(original.size() - (segment.i1 - segment.i0 + 1) + rep.size());
  for (std::size_t i = 0; i < segment.i0; ++i) {
    out.vertices.push_back(original.vertices[i]);
    out.labels.push_back(original.labels[i]);
  }
  for (std::size_t i = 0; i < rep.size(); ++i) {
    out.vertices.push_back(rep.vertices[i]);
    out.labels.push_back(rep.labels[i]);
  }
  for (std::size_t i = segment.i1 + 1; i < original.size(); ++i) {
    out.vertices.push_back(original.vertices[i]);
    out.labels.push_back(original.labels[i]);
  }
  out.rebuild_arclength();
  return out;
}

}  // namespace fieldsmooth
