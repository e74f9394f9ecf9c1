#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fieldsmooth/pipeline.hpp"

namespace {

using namespace fieldsmooth;

void add_config_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_file) {
  cmd->add_option("--config", config_file, "key=value config file overriding defaults");
  cmd->add_option("--wheelbase", cfg.wheelbase_m, "wheelbase [m]");
  cmd->add_option("--delta-max", cfg.delta_max_deg, "max steering angle [deg]");
  cmd->add_option("--ddelta-max", cfg.ddelta_max_deg_s, "max steering rate [deg/s]");
  cmd->add_option("--v-ref", cfg.v_ref_kmh, "reference speed [km/h]");
  cmd->add_option("--ds", cfg.ds_m, "arclength grid spacing [m]");
  cmd->add_option("--width", cfg.operating_width_m, "operating width [m]");
  cmd->add_option("--r-dubins", cfg.r_dubins_m, "Dubins radius [m], default min turn radius");
  cmd->add_option("--theta-edge", cfg.theta_edge_deg, "edgy-vertex heading threshold [deg]");
  cmd->add_option("--raster-cell", cfg.raster_cell_m, "coverage raster cell [m]");
  cmd->add_option("--corner-cut-iterations", cfg.corner_cut_iterations,
                  "corner-cut smoothing passes on the 5-point reference");
}

void finalize_config(RunConfig& cfg, const std::string& config_file) {
  if (!config_file.empty()) load_config_file(cfg, config_file);
  cfg.validate();
}

FieldLayout pick_field(const std::string& input, const RunConfig& cfg) {
  if (input.empty()) return regression_field(cfg);
  return load_field(input, cfg);
}

void write_steering_csv(const SmoothedPath& sp, std::ostream& os) {
  os << "s_m,x_m,y_m,delta_rad\n";
  for (std::size_t j = 0; j < sp.path.size(); ++j) {
    const double delta = j < sp.steering.size() ? sp.steering[j] : sp.steering.back();
    os << sp.path.cumulative_s[j] << ',' << sp.path.vertices[j].x << ','
       << sp.path.vertices[j].y << ',' << delta << '\n';
  }
}

int run_plan(const std::string& input, const std::string& out_dir, const RunConfig& cfg) {
  const FieldLayout layout = pick_field(input, cfg);
  const PipelineResult result = run_pipeline(layout, cfg);
  emit_outputs(result, layout, out_dir);
  std::cout << "instances: " << result.report.rows.size()
            << "  failed: " << result.report.failures()
            << "  gap-free raster cells covered: " << result.raster.covered_cells() << "\n";
  return result.report.failures() == 0 ? 0 : 2;
}

// synthetic single-corner field: two legs meeting at the requested angle
int run_smooth_corner(double angle_deg, const std::string& out, const RunConfig& cfg) {
  const double w = cfg.operating_width_m;
  const double ang = angle_deg * M_PI / 180.0;
  const double leg = std::max(4.0 * cfg.edge_half_length(), 3.0 * w);
  const Point2 apex{0.0, 0.0};
  const Point2 a{-leg, 0.0};
  const Point2 e{apex.x + leg * std::cos(ang), apex.y + leg * std::sin(ang)};
  PathPolyline path = resample_uniform(PathPolyline({a, apex, e}, VertexRole::Headland), cfg.ds_m);

  // local contour corner at distance w/2 outward of the apex
  const Point2 u_in = (apex - a).normalized();
  const Point2 u_out = (e - apex).normalized();
  const Point2 outward = (u_in - u_out).normalized();
  const std::vector<Point2> contour{
      a + outward * (0.5 * w), apex + outward * (0.5 * w), e + outward * (0.5 * w),
      e - outward * (2.0 * w), a - outward * (2.0 * w)};

  const VehicleParams params = cfg.vehicle();
  auto segs = detect_edgy_segments(path, cfg.theta_edge_deg * M_PI / 180.0,
                                   params.min_turn_radius());
  if (segs.empty()) throw InputError("no corner detected for the requested angle");
  expand_segments(path, segs, cfg.edge_half_length() + 3.0 * cfg.ds_m,
                  transition_half_length(cfg.r_dubins()));
  const ReferencePath ref = build_pwa5_reference(segs.front(), path, contour, w, params,
                                                 cfg.ds_m, cfg.corner_cut_iterations);
  const SmoothedPath sp = solve_smoothing(ref, params);
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  write_steering_csv(sp, f);
  std::cout << "corner smoothed: N=" << sp.steering.size() << " max|e_y|=" << sp.max_offset
            << " m, slack=" << sp.slack << ", written to " << out << "\n";
  return 0;
}

// synthetic headland-to-lane transition: straight headland leg, 90-degree
// junction, straight lane leg
int run_smooth_transition(const std::string& out, const RunConfig& cfg) {
  const double leg = std::max(3.0 * cfg.r_dubins(), 15.0);
  std::vector<Point2> pts;
  std::vector<VertexRole> roles;
  const int n = static_cast<int>(leg / cfg.ds_m);
  for (int i = 0; i <= n; ++i) {
    pts.push_back({-leg + i * cfg.ds_m, 0.0});
    roles.push_back(VertexRole::Headland);
  }
  for (int i = 1; i <= n; ++i) {
    pts.push_back({0.0, i * cfg.ds_m});
    roles.push_back(VertexRole::Lane);
  }
  PathPolyline path(pts, roles);

  const VehicleParams params = cfg.vehicle();
  auto segs = detect_edgy_segments(path, cfg.theta_edge_deg * M_PI / 180.0,
                                   params.min_turn_radius());
  expand_segments(path, segs, cfg.edge_half_length(), transition_half_length(cfg.r_dubins()));
  if (segs.empty()) throw InputError("no transition detected");
  const ReferencePath ref = build_dubins_reference(
      segs.front(), path, cfg.r_dubins(), default_extension_length(cfg.r_dubins()), cfg.ds_m);
  const SmoothedPath sp = solve_smoothing(ref, params);
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  write_steering_csv(sp, f);
  std::cout << "transition smoothed: N=" << sp.steering.size() << " max|e_y|=" << sp.max_offset
            << " m, written to " << out << "\n";
  return 0;
}

int run_simulate_saturated(double ts, double delta0_deg, const std::string& out,
                           const RunConfig& cfg) {
  const SaturatedSimResult res =
      saturated_steering_simulation(cfg.vehicle(), ts, cfg.v_ref_kmh / 3.6,
                                    delta0_deg * M_PI / 180.0);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw InputError("cannot write " + out);
    f << "x_m,y_m,psi_rad,delta_rad\n";
    for (const TimeState& s : res.trajectory)
      f << s.x << ',' << s.y << ',' << s.psi << ',' << s.delta << '\n';
  }
  std::cout << "envelope radius: " << res.envelope_radius << " m (center "
            << res.envelope_center.x << ", " << res.envelope_center.y << ")\n";
  return 0;
}

int run_sweep_radius(const std::string& input, const std::vector<double>& radii,
                     const std::string& out, const RunConfig& cfg) {
  const FieldLayout layout = pick_field(input, cfg);
  const auto rows = sweep_dubins_radius(layout, cfg, radii);
  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!out.empty()) {
    f.open(out);
    if (!f) throw InputError("cannot write " + out);
    os = &f;
  }
  *os << "r_dubins_m,instances,mean_max_ey_m,max_max_ey_m\n";
  for (const SweepRow& r : rows)
    *os << r.radius << ',' << r.instances << ',' << r.mean_max_ey << ',' << r.max_max_ey << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Field path smoothing toolkit: headland corner and lane-transition smoothing "
               "via spatial-domain vehicle dynamics and linear programming"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_file;
  std::string input, out_dir = "out", out_file;
  double angle_deg = 90.0, ts = 0.01, delta0_deg = 0.0;
  std::vector<double> radii{5.0, 5.33, 7.0};

  CLI::App* plan = app.add_subcommand("plan", "full pipeline on a field (default: built-in "
                                              "regression field)");
  plan->add_option("--input", input, "field GeoJSON or contour CSV");
  plan->add_option("--out", out_dir, "output directory");
  add_config_flags(plan, cfg, config_file);

  CLI::App* corner = app.add_subcommand("smooth-corner", "smooth one synthetic headland corner");
  corner->add_option("--angle", angle_deg, "corner turn angle [deg]");
  corner->add_option("--out", out_file, "output CSV")->required();
  add_config_flags(corner, cfg, config_file);

  CLI::App* trans = app.add_subcommand("smooth-transition",
                                       "smooth one synthetic headland-to-lane transition");
  trans->add_option("--out", out_file, "output CSV")->required();
  add_config_flags(trans, cfg, config_file);

  CLI::App* sat = app.add_subcommand("simulate-saturated",
                                     "full-turn simulation with saturated steering rate");
  sat->add_option("--ts", ts, "sampling time [s]");
  sat->add_option("--delta0", delta0_deg, "initial steering angle [deg]");
  sat->add_option("--out", out_file, "trajectory CSV (optional)");
  add_config_flags(sat, cfg, config_file);

  CLI::App* sweep = app.add_subcommand("sweep-radius",
                                       "transition deviation statistics over Dubins radii");
  sweep->add_option("--input", input, "field GeoJSON or contour CSV");
  sweep->add_option("--radii", radii, "Dubins radii to sweep [m]");
  sweep->add_option("--out", out_file, "output CSV (default stdout)");
  add_config_flags(sweep, cfg, config_file);

  CLI11_PARSE(app, argc, argv);

  try {
    finalize_config(cfg, config_file);
    if (plan->parsed()) return run_plan(input, out_dir, cfg);
    if (corner->parsed()) return run_smooth_corner(angle_deg, out_file, cfg);
    if (trans->parsed()) return run_smooth_transition(out_file, cfg);
    if (sat->parsed()) return run_simulate_saturated(ts, delta0_deg, out_file, cfg);
    if (sweep->parsed()) return run_sweep_radius(input, radii, out_file, cfg);
  } catch (const fieldsmooth::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
