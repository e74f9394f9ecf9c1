#include "fieldsmooth/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace fieldsmooth {

using nlohmann::json;

VehicleParams RunConfig::vehicle() const {
  VehicleParams p;
  p.wheelbase = wheelbase_m;
  p.delta_max = delta_max_deg * M_PI / 180.0;
  p.delta_min = -p.delta_max;
  p.ddelta_max = ddelta_max_deg_s * M_PI / 180.0;
  p.ddelta_min = -p.ddelta_max;
  p.v_ref = v_ref_kmh / 3.6;
  p.validate();
  return p;
}

double RunConfig::r_dubins() const {
  return r_dubins_m ? *r_dubins_m : vehicle().min_turn_radius();
}

double RunConfig::edge_half_length() const {
  return std::max(2.0 * vehicle().min_turn_radius(), 0.5 * operating_width_m);
}

void RunConfig::validate() const {
  vehicle();
  if (ds_m <= 0.0) throw InputError("ds_m must be positive");
  if (operating_width_m <= 0.0) throw InputError("operating_width_m must be positive");
  if (r_dubins_m && *r_dubins_m <= 0.0) throw InputError("r_dubins_m must be positive");
  if (theta_edge_deg <= 0.0 || theta_edge_deg >= 180.0)
    throw InputError("theta_edge_deg must be in (0, 180)");
  if (raster_cell_m <= 0.0 || raster_cell_m > operating_width_m / 10.0)
    throw InputError("raster_cell_m must be positive and at most operating_width_m / 10");
  if (corner_cut_iterations < 0) throw InputError("corner_cut_iterations must be >= 0");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_line(RunConfig& cfg, const std::string& line) {
  const std::string t = trim(line);
  if (t.empty() || t[0] == '#') return;
  const auto eq = t.find('=');
  if (eq == std::string::npos) throw InputError("config line is not key=value: " + t);
  const std::string key = trim(t.substr(0, eq));
  const std::string val = trim(t.substr(eq + 1));
  double num = 0.0;
  try {
    num = std::stod(val);
  } catch (const std::exception&) {
    throw InputError("config value for " + key + " is not numeric: " + val);
  }
  if (key == "wheelbase_m") cfg.wheelbase_m = num;
  else if (key == "delta_max_deg") cfg.delta_max_deg = num;
  else if (key == "ddelta_max_deg_s") cfg.ddelta_max_deg_s = num;
  else if (key == "v_ref_kmh") cfg.v_ref_kmh = num;
  else if (key == "ds_m") cfg.ds_m = num;
  else if (key == "operating_width_m") cfg.operating_width_m = num;
  else if (key == "r_dubins_m") cfg.r_dubins_m = num;
  else if (key == "theta_edge_deg") cfg.theta_edge_deg = num;
  else if (key == "raster_cell_m") cfg.raster_cell_m = num;
  else if (key == "corner_cut_iterations") cfg.corner_cut_iterations = static_cast<int>(num);
  else throw InputError("unknown config key: " + key);
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) apply_config_line(cfg, line);
}

int RunReport::failures() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                        [](const InstanceReport& r) { return !r.ok; }));
}

double RunReport::mean_vars() const {
  if (rows.empty()) return 0.0;
  double s = 0.0;
  for (const auto& r : rows) s += r.n_vars;
  return s / rows.size();
}

double RunReport::mean_rows() const {
  if (rows.empty()) return 0.0;
  double s = 0.0;
  for (const auto& r : rows) s += r.n_rows;
  return s / rows.size();
}

double RunReport::mean_solve_ms() const {
  if (rows.empty()) return 0.0;
  double s = 0.0;
  for (const auto& r : rows) s += r.solve_ms;
  return s / rows.size();
}

// -- field synthesis ----------------------------------------------------------

namespace {

std::pair<Point2, Point2> bounds_of(const std::vector<Point2>& pts) {
  Point2 lo = pts.front(), hi = pts.front();
  for (const Point2& p : pts) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  return {lo, hi};
}

// y-interval cut out of a polygon by the vertical line x = x0
bool vertical_span(const std::vector<Point2>& poly, double x0, double* y_lo, double* y_hi) {
  std::vector<double> ys;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    if ((a.x <= x0) == (b.x <= x0)) continue;
    ys.push_back(a.y + (b.y - a.y) * (x0 - a.x) / (b.x - a.x));
  }
  if (ys.size() < 2) return false;
  *y_lo = *std::min_element(ys.begin(), ys.end());
  *y_hi = *std::max_element(ys.begin(), ys.end());
  return true;
}

PathPolyline closed_loop(const std::vector<Point2>& poly, VertexRole role) {
  std::vector<Point2> pts = poly;
  pts.push_back(poly.front());
  return PathPolyline(std::move(pts), role);
}

}  // namespace

FieldLayout make_field_layout(std::vector<Point2> contour, const RunConfig& cfg) {
  cfg.validate();
  if (contour.size() < 3) throw InputError("contour needs at least 3 vertices");
  if (distance(contour.front(), contour.back()) < 1e-9) contour.pop_back();
  if (!polygon_is_simple(contour)) throw InputError("contour polygon is self-intersecting");
  const auto [lo, hi] = bounds_of(contour);
  if (hi.x - lo.x < 10.0 && hi.y - lo.y < 10.0)
    throw InputError("contour span below 10 m; coordinates look like degrees, expected meters");
  if (polygon_area(contour) < 0.0) std::reverse(contour.begin(), contour.end());

  const double w = cfg.operating_width_m;
  FieldLayout layout;
  layout.operating_width = w;
  std::vector<Point2> head = inward_offset(contour, 0.5 * w);
  layout.contour = std::move(contour);
  layout.headland = closed_loop(head, VertexRole::Headland);

  const auto [hlo, hhi] = bounds_of(head);
  for (double x = hlo.x + 0.5 * w; x <= hhi.x - 0.5 * w + 1e-9; x += w) {
    double y0 = 0.0, y1 = 0.0;
    if (!vertical_span(head, x, &y0, &y1)) continue;
    if (y1 - y0 < w) continue;  // sliver
    layout.lanes.emplace_back(std::vector<Point2>{{x, y0}, {x, y1}}, VertexRole::Lane);
  }
  if (layout.lanes.empty()) throw InputError("field too small for any lane at this width");
  return layout;
}

FieldLayout regression_field(const RunConfig& cfg) {
  return make_field_layout({{0.0, 0.0}, {200.0, 8.0}, {206.0, 148.0}, {-6.0, 188.0}}, cfg);
}

FieldLayout load_field(const std::string& file, const RunConfig& cfg) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open field file: " + file);

  const auto dot = file.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : file.substr(dot + 1);
  if (ext == "csv" || ext == "txt") {
    std::vector<Point2> contour;
    std::string line;
    while (std::getline(in, line)) {
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      std::string body = t;
      std::replace(body.begin(), body.end(), ',', ' ');
      std::istringstream row(body);
      Point2 p;
      if (!(row >> p.x >> p.y)) throw InputError("bad contour row: " + t);
      contour.push_back(p);
    }
    return make_field_layout(std::move(contour), cfg);
  }

  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid GeoJSON: ") + e.what());
  }
  std::vector<Point2> contour;
  PathPolyline headland;
  std::vector<PathPolyline> lanes;
  for (const json& f : j.value("features", json::array())) {
    const json& geom = f.at("geometry");
    const std::string type = geom.at("type");
    const std::string role = f.value("properties", json::object()).value("role", "");
    if (type == "Polygon" && (role == "contour" || contour.empty())) {
      contour.clear();
      for (const json& c : geom.at("coordinates").at(0))
        contour.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    } else if (type == "LineString") {
      std::vector<Point2> pts;
      for (const json& c : geom.at("coordinates"))
        pts.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
      if (role == "headland") headland = PathPolyline(std::move(pts), VertexRole::Headland);
      else if (role == "lane") lanes.emplace_back(std::move(pts), VertexRole::Lane);
    }
  }
  if (contour.empty()) throw InputError("GeoJSON has no contour polygon");
  FieldLayout layout = make_field_layout(std::move(contour), cfg);
  if (headland.size() >= 3) layout.headland = std::move(headland);
  if (!lanes.empty()) layout.lanes = std::move(lanes);
  return layout;
}

// -- plan skeleton ------------------------------------------------------------

namespace {

void append_piece(PathPolyline& plan, const PathPolyline& piece) {
  for (std::size_t i = 0; i < piece.size(); ++i) {
    if (!plan.vertices.empty() && distance(plan.vertices.back(), piece.vertices[i]) < 1e-9) {
      continue;  // shared junction vertex; keep the earlier label
    }
    plan.vertices.push_back(piece.vertices[i]);
    plan.labels.push_back(piece.labels[i]);
  }
}

// lane endpoints ordered bottom (smaller y) first
std::pair<Point2, Point2> lane_ends(const PathPolyline& lane) {
  const Point2 a = lane.vertices.front();
  const Point2 b = lane.vertices.back();
  return a.y <= b.y ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace

PathPolyline build_plan_skeleton(const FieldLayout& layout, const RunConfig& cfg) {
  if (layout.lanes.empty()) throw InputError("layout has no lanes");
  if (layout.headland.size() < 4) throw InputError("layout has no headland loop");
  const double ds = cfg.ds_m;
  const double w = layout.operating_width > 0.0 ? layout.operating_width
                                                : cfg.operating_width_m;

  // headland ring, counter-clockwise, without the closing duplicate
  std::vector<Point2> ring(layout.headland.vertices);
  if (distance(ring.front(), ring.back()) < 1e-9) ring.pop_back();
  if (polygon_area(ring) < 0.0) std::reverse(ring.begin(), ring.end());
  PathPolyline ring_path = closed_loop(ring, VertexRole::Headland);

  std::vector<PathPolyline> lanes = layout.lanes;
  std::sort(lanes.begin(), lanes.end(), [](const PathPolyline& a, const PathPolyline& b) {
    return a.vertices.front().x < b.vertices.front().x;
  });

  const Point2 start = lane_ends(lanes.front()).first;
  const double s0 = ring_path.project_arclength(start);

  // full loop from the first junction back to itself
  const double total = ring_path.length();
  std::vector<std::pair<double, std::size_t>> order;  // (arclength past s0, ring index)
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const double rel = std::fmod(ring_path.cumulative_s[i] - s0 + total, total);
    order.push_back({rel, i});
  }
  std::sort(order.begin(), order.end());
  std::vector<Point2> loop_pts{start};
  for (const auto& [rel, idx] : order) {
    if (distance(loop_pts.back(), ring[idx]) > 1e-9) loop_pts.push_back(ring[idx]);
  }
  if (distance(loop_pts.back(), start) > 1e-9) loop_pts.push_back(start);
  PathPolyline plan = resample_uniform(PathPolyline(std::move(loop_pts), VertexRole::Headland), ds);

  for (std::size_t k = 0; k < lanes.size(); ++k) {
    const auto [bottom, top] = lane_ends(lanes[k]);
    const bool up = k % 2 == 0;
    const Point2 entry = up ? bottom : top;
    const Point2 exit = up ? top : bottom;
    append_piece(plan, resample_uniform(PathPolyline({entry, exit}, VertexRole::Lane), ds));

    if (k + 1 < lanes.size()) {
      const auto [nb, nt] = lane_ends(lanes[k + 1]);
      const Point2 next_entry = (k + 1) % 2 == 0 ? nb : nt;
      append_piece(plan,
                   resample_uniform(PathPolyline({exit, next_entry}, VertexRole::Headland), ds));
    } else {
      // straight headland tail past the final junction, stopping short of the
      // next headland corner
      std::size_t best_edge = 0;
      double best_d = kInf;
      for (std::size_t i = 0; i + 1 < ring_path.size(); ++i) {
        const double d =
            point_segment_distance(exit, ring_path.vertices[i], ring_path.vertices[i + 1]);
        if (d < best_d) {
          best_d = d;
          best_edge = i;
        }
      }
      Point2 dir =
          (ring_path.vertices[best_edge + 1] - ring_path.vertices[best_edge]).normalized();
      if ((std::fabs(dir.x) >= std::fabs(dir.y) && dir.x < 0.0) ||
          (std::fabs(dir.x) < std::fabs(dir.y) && dir.y < 0.0))
        dir = dir * -1.0;
      double len = w;
      for (const Point2& v : ring) {
        const Point2 rel = v - exit;
        if (rel.dot(dir) > 0.5 && std::fabs(dir.cross(rel)) < 1.0)
          len = std::min(len, rel.dot(dir) - 1.0);
      }
      len = std::max(len, 2.0);
      append_piece(plan, resample_uniform(
                             PathPolyline({exit, exit + dir * len}, VertexRole::Headland), ds));
    }
  }
  plan.rebuild_arclength();
  return plan;
}

// -- pipeline -----------------------------------------------------------------

PipelineResult run_pipeline(const FieldLayout& layout, const RunConfig& cfg) {
  cfg.validate();
  const VehicleParams params = cfg.vehicle();
  const double w = layout.operating_width > 0.0 ? layout.operating_width
                                                : cfg.operating_width_m;
  const double r_dub = cfg.r_dubins();
  const double l_ext = default_extension_length(r_dub);

  const PathPolyline skeleton = build_plan_skeleton(layout, cfg);
  std::vector<EdgySegment> segments = detect_edgy_segments(
      skeleton, cfg.theta_edge_deg * M_PI / 180.0, params.min_turn_radius());
  expand_segments(skeleton, segments, cfg.edge_half_length() + 3.0 * cfg.ds_m,
                  transition_half_length(r_dub));

  PipelineResult result;
  result.plan = skeleton;

  // back-to-front so earlier spans keep their skeleton indices after stitching
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    const EdgySegment& seg = *it;
    InstanceReport row;
    row.kind = seg.kind;
    row.i0 = seg.i0;
    row.i1 = seg.i1;
    row.merged = seg.merged;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ReferencePath ref;
      if (seg.kind == SegmentKind::HeadlandCorner) {
        try {
          ref = build_pwa5_reference(seg, skeleton, layout.contour, w, params, cfg.ds_m,
                                     cfg.corner_cut_iterations);
        } catch (const FallbackDubinsCorner&) {
          ref = build_dubins_reference(seg, skeleton, r_dub, l_ext, cfg.ds_m);
        }
      } else {
        ref = build_dubins_reference(seg, skeleton, r_dub, l_ext, cfg.ds_m);
        ref.weight_index = compute_weight_index(ref, layout.headland);
      }
      const SmoothedPath sp = solve_smoothing(ref, params);
      result.plan = stitch_replace(result.plan, seg, sp);
      row.n_intervals = static_cast<int>(sp.steering.size());
      row.n_vars = sp.lp_vars;
      row.n_rows = sp.lp_rows;
      row.max_ey = sp.max_offset;
      row.pathlength = sp.path.length();
      const auto [blo, bhi] = bounds_of(sp.path.vertices);
      row.box_lo = blo - Point2{2.0, 2.0};
      row.box_hi = bhi + Point2{2.0, 2.0};
      row.ok = true;
    } catch (const std::exception& e) {
      row.message = e.what();
    }
    row.solve_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    result.report.rows.push_back(row);
  }
  std::reverse(result.report.rows.begin(), result.report.rows.end());

  const auto [lo, hi] = bounds_of(layout.contour);
  const Point2 pad{0.5 * w + 1.0, 0.5 * w + 1.0};
  result.raster = make_raster(lo - pad, hi + pad, cfg.raster_cell_m);
  accumulate_swath(result.raster, result.plan, w);
  return result;
}

std::vector<SweepRow> sweep_dubins_radius(const FieldLayout& layout, const RunConfig& cfg,
                                          const std::vector<double>& radii) {
  std::vector<SweepRow> out;
  for (const double r : radii) {
    RunConfig c = cfg;
    c.r_dubins_m = r;
    const PipelineResult res = run_pipeline(layout, c);
    SweepRow row;
    row.radius = r;
    for (const InstanceReport& inst : res.report.rows) {
      // hybrid corner+transition instances are not pure junction geometry and
      // would dominate the statistics of the radius study
      if (inst.kind == SegmentKind::HeadlandCorner || inst.merged || !inst.ok) continue;
      ++row.instances;
      row.mean_max_ey += inst.max_ey;
      row.max_max_ey = std::max(row.max_max_ey, inst.max_ey);
    }
    if (row.instances > 0) row.mean_max_ey /= row.instances;
    out.push_back(row);
  }
  return out;
}

// -- emission -----------------------------------------------------------------

namespace {

const char* role_name(VertexRole role) {
  switch (role) {
    case VertexRole::Headland: return "headland";
    case VertexRole::Lane: return "lane";
    case VertexRole::Transition: return "transition";
  }
  return "?";
}

VertexRole role_from(const std::string& s) {
  if (s == "headland") return VertexRole::Headland;
  if (s == "lane") return VertexRole::Lane;
  if (s == "transition") return VertexRole::Transition;
  throw InputError("unknown vertex role: " + s);
}

}  // namespace

void write_plan_geojson(const PathPolyline& plan, std::ostream& os) {
  json features = json::array();
  std::size_t i = 0;
  while (i < plan.size()) {
    std::size_t j = i;
    while (j + 1 < plan.size() && plan.labels[j + 1] == plan.labels[i]) ++j;
    json coords = json::array();
    for (std::size_t k = i; k <= j; ++k)
      coords.push_back({plan.vertices[k].x, plan.vertices[k].y});
    features.push_back({{"type", "Feature"},
                        {"properties", {{"role", role_name(plan.labels[i])}}},
                        {"geometry", {{"type", "LineString"}, {"coordinates", coords}}}});
    i = j + 1;
  }
  const json root = {{"type", "FeatureCollection"}, {"features", features}};
  os << root.dump(2) << "\n";
}

PathPolyline read_plan_geojson(std::istream& is) {
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid plan GeoJSON: ") + e.what());
  }
  PathPolyline plan;
  for (const json& f : j.at("features")) {
    const VertexRole role = role_from(f.at("properties").at("role").get<std::string>());
    for (const json& c : f.at("geometry").at("coordinates")) {
      plan.vertices.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
      plan.labels.push_back(role);
    }
  }
  plan.rebuild_arclength();
  return plan;
}

void write_report_csv(const RunReport& report, std::ostream& os) {
  os << "kind,i0,i1,N,n_u,n_cstrts,solve_ms,max_ey_m,pathlength_m,status,message\n";
  os << std::setprecision(9);
  for (const InstanceReport& r : report.rows) {
    os << to_string(r.kind) << (r.merged ? "+corner" : "") << ',' << r.i0 << ',' << r.i1
       << ',' << r.n_intervals << ','
       << r.n_vars << ',' << r.n_rows << ',' << r.solve_ms << ',' << r.max_ey << ','
       << r.pathlength << ',' << (r.ok ? "ok" : "failed") << ',' << r.message << '\n';
  }
  os << "mean,,,," << report.mean_vars() << ',' << report.mean_rows() << ','
     << report.mean_solve_ms() << ",,,,\n";
}

namespace {

void svg_polyline(std::ostream& os, const std::vector<Point2>& pts, const char* style,
                  double ox, double oy, double scale, double height) {
  os << "  <polyline fill=\"none\" " << style << " points=\"";
  os << std::fixed << std::setprecision(2);
  for (const Point2& p : pts)
    os << (p.x - ox) * scale << ',' << height - (p.y - oy) * scale << ' ';
  os << "\"/>\n";
  os.unsetf(std::ios_base::floatfield);
}

}  // namespace

void write_figure_svg(const PipelineResult& result, const FieldLayout& layout, std::ostream& os) {
  std::vector<Point2> all = layout.contour;
  const auto [lo, hi] = [&all]() {
    Point2 l = all.front(), h = all.front();
    for (const Point2& p : all) {
      l.x = std::min(l.x, p.x);
      l.y = std::min(l.y, p.y);
      h.x = std::max(h.x, p.x);
      h.y = std::max(h.y, p.y);
    }
    return std::pair{l, h};
  }();
  const double margin = 10.0;
  const double ox = lo.x - margin, oy = lo.y - margin;
  const double span_x = hi.x - lo.x + 2 * margin;
  const double span_y = hi.y - lo.y + 2 * margin;
  const double scale = 800.0 / std::max(span_x, span_y);
  const double width = span_x * scale;
  const double height = span_y * scale;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";

  std::vector<Point2> contour = layout.contour;
  contour.push_back(contour.front());
  svg_polyline(os, contour, "stroke=\"black\" stroke-width=\"2\"", ox, oy, scale, height);
  svg_polyline(os, layout.headland.vertices, "stroke=\"gray\" stroke-dasharray=\"6,4\"", ox, oy,
               scale, height);
  for (const PathPolyline& lane : layout.lanes)
    svg_polyline(os, lane.vertices, "stroke=\"#c0c0c0\"", ox, oy, scale, height);

  // smoothed plan, one polyline per label run
  std::size_t i = 0;
  const PathPolyline& plan = result.plan;
  while (i < plan.size()) {
    std::size_t j = i;
    while (j + 1 < plan.size() && plan.labels[j + 1] == plan.labels[i]) ++j;
    const char* style = plan.labels[i] == VertexRole::Headland
                            ? "stroke=\"#2a7e2a\" stroke-width=\"1.5\""
                            : plan.labels[i] == VertexRole::Lane
                                  ? "stroke=\"#2a4b7e\" stroke-width=\"1.5\""
                                  : "stroke=\"#c03030\" stroke-width=\"2\"";
    std::vector<Point2> run(plan.vertices.begin() + i, plan.vertices.begin() + j + 1);
    if (i > 0) run.insert(run.begin(), plan.vertices[i - 1]);
    svg_polyline(os, run, style, ox, oy, scale, height);
    i = j + 1;
  }

  // per-instance zoom boxes
  os << std::fixed << std::setprecision(2);
  for (const InstanceReport& r : result.report.rows) {
    if (!r.ok) continue;
    const double x = (r.box_lo.x - ox) * scale;
    const double y = height - (r.box_hi.y - oy) * scale;
    os << "  <rect fill=\"none\" stroke=\"#d08020\" stroke-width=\"1\" x=\"" << x << "\" y=\""
       << y << "\" width=\"" << (r.box_hi.x - r.box_lo.x) * scale << "\" height=\""
       << (r.box_hi.y - r.box_lo.y) * scale << "\"/>\n";
  }
  os.unsetf(std::ios_base::floatfield);
  os << "</svg>\n";
}

void emit_outputs(const PipelineResult& result, const FieldLayout& layout,
                  const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create output directory: " + out_dir);

  const auto open = [&](const char* name) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    if (!f) throw InputError(std::string("cannot write ") + name + " in " + out_dir);
    return f;
  };
  {
    auto f = open("plan.geojson");
    write_plan_geojson(result.plan, f);
  }
  {
    auto f = open("report.csv");
    write_report_csv(result.report, f);
  }
  {
    auto f = open("figure.svg");
    write_figure_svg(result, layout, f);
  }
  {
    auto f = open("coverage.pgm");
    write_pgm(result.raster, f);
  }
}

}  // namespace fieldsmooth
