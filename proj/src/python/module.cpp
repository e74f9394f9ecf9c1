#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fieldsmooth/pipeline.hpp"

namespace py = pybind11;
using namespace fieldsmooth;

namespace {

RunConfig make_config(const py::dict& options) {
  RunConfig cfg;
  for (const auto& item : options) {
    const std::string key = py::cast<std::string>(item.first);
    const std::string value = py::cast<std::string>(py::str(item.second));
    apply_config_line(cfg, key + "=" + value);
  }
  cfg.validate();
  return cfg;
}

std::vector<Point2> to_points(const std::vector<std::pair<double, double>>& pts) {
  std::vector<Point2> out;
  out.reserve(pts.size());
  for (const auto& [x, y] : pts) out.push_back({x, y});
  return out;
}

const char* role_name(VertexRole role) {
  switch (role) {
    case VertexRole::Headland: return "headland";
    case VertexRole::Lane: return "lane";
    default: return "transition";
  }
}

py::dict plan_dict(const PipelineResult& result) {
  py::list plan;
  for (std::size_t i = 0; i < result.plan.size(); ++i) {
    const Point2& p = result.plan.vertices[i];
    plan.append(py::make_tuple(p.x, p.y, role_name(result.plan.labels[i])));
  }
  py::list rows;
  for (const InstanceReport& r : result.report.rows) {
    py::dict row;
    row["kind"] = to_string(r.kind) + (r.merged ? "+corner" : "");
    row["span"] = py::make_tuple(r.i0, r.i1);
    row["n_intervals"] = r.n_intervals;
    row["n_vars"] = r.n_vars;
    row["n_rows"] = r.n_rows;
    row["max_ey"] = r.max_ey;
    row["pathlength"] = r.pathlength;
    row["ok"] = r.ok;
    row["message"] = r.message;
    rows.append(std::move(row));
  }
  py::dict out;
  out["plan"] = std::move(plan);
  out["instances"] = std::move(rows);
  out["failures"] = result.report.failures();
  out["covered_cells"] = result.raster.covered_cells();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deterministic LP-based smoothing of agricultural coverage plans";

  m.def(
      "min_turn_radius",
      [](const py::dict& options) { return make_config(options).vehicle().min_turn_radius(); },
      py::arg("options") = py::dict(),
      "Minimum turning radius for the configured vehicle, in metres.");

  m.def(
      "plan",
      [](const std::vector<std::pair<double, double>>& contour, const py::dict& options) {
        const RunConfig cfg = make_config(options);
        const FieldLayout layout = make_field_layout(to_points(contour), cfg);
        return plan_dict(run_pipeline(layout, cfg));
      },
      py::arg("contour"), py::arg("options") = py::dict(),
      "Full pipeline on a field contour: labelled smoothed plan plus per-instance reports.");

  m.def(
      "plan_to_files",
      [](const std::vector<std::pair<double, double>>& contour, const std::string& out_dir,
         const py::dict& options) {
        const RunConfig cfg = make_config(options);
        const FieldLayout layout = make_field_layout(to_points(contour), cfg);
        const PipelineResult result = run_pipeline(layout, cfg);
        emit_outputs(result, layout, out_dir);
        return result.report.failures();
      },
      py::arg("contour"), py::arg("out_dir"), py::arg("options") = py::dict(),
      "Run the pipeline and write plan.geojson, report.csv, figure.svg and coverage.pgm.");

  m.def(
      "sweep_radius",
      [](const std::vector<std::pair<double, double>>& contour, const std::vector<double>& radii,
         const py::dict& options) {
        const RunConfig cfg = make_config(options);
        const FieldLayout layout = make_field_layout(to_points(contour), cfg);
        py::list out;
        for (const SweepRow& r : sweep_dubins_radius(layout, cfg, radii)) {
          py::dict row;
          row["radius"] = r.radius;
          row["instances"] = r.instances;
          row["mean_max_ey"] = r.mean_max_ey;
          row["max_max_ey"] = r.max_max_ey;
          out.append(std::move(row));
        }
        return out;
      },
      py::arg("contour"), py::arg("radii"), py::arg("options") = py::dict(),
      "Transition-deviation statistics for each turn radius.");

  m.def(
      "saturated_envelope",
      [](double ts, double delta0, const py::dict& options) {
        const VehicleParams params = make_config(options).vehicle();
        const SaturatedSimResult sim =
            saturated_steering_simulation(params, ts, params.v_ref, delta0);
        py::dict out;
        out["radius"] = sim.envelope_radius;
        out["center"] = py::make_tuple(sim.envelope_center.x, sim.envelope_center.y);
        out["samples"] = sim.trajectory.size();
        return out;
      },
      py::arg("ts") = 0.01, py::arg("delta0") = 0.0, py::arg("options") = py::dict(),
      "Envelope circle of a full turn with the steering saturating towards full lock.");

  m.def(
      "regression_contour",
      [](const py::dict& options) {
        const FieldLayout layout = regression_field(make_config(options));
        std::vector<std::pair<double, double>> out;
        for (const Point2& p : layout.contour) out.emplace_back(p.x, p.y);
        return out;
      },
      py::arg("options") = py::dict(), "Contour of the shipped regression field.");
}
