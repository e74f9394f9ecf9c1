#include "fieldsmooth/geometry.hpp"

#include <algorithm>
#include <limits>

namespace fieldsmooth {

namespace {
constexpr double kDupTol = 1e-9;
}

Point2 Point2::normalized() const {
  const double n = norm();
  if (n < kDupTol) return {0.0, 0.0};
  return {x / n, y / n};
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  if (a > M_PI) a -= 2.0 * M_PI;
  return a;
}

// -- PathPolyline -------------------------------------------------------------

PathPolyline::PathPolyline(std::vector<Point2> pts, VertexRole role)
    : vertices(std::move(pts)), labels(vertices.size(), role) {
  rebuild_arclength();
}

PathPolyline::PathPolyline(std::vector<Point2> pts, std::vector<VertexRole> roles)
    : vertices(std::move(pts)), labels(std::move(roles)) {
  rebuild_arclength();
}

void PathPolyline::rebuild_arclength() {
  cumulative_s.resize(vertices.size());
  double s = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i > 0) s += distance(vertices[i - 1], vertices[i]);
    cumulative_s[i] = s;
  }
}

void PathPolyline::validate() const {
  if (vertices.size() < 2) throw InvalidPath("polyline needs at least 2 vertices");
  if (labels.size() != vertices.size()) throw InvalidPath("label/vertex count mismatch");
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (distance(vertices[i - 1], vertices[i]) < kDupTol)
      throw InvalidPath("duplicate consecutive vertices");
  }
}

Point2 PathPolyline::point_at(double s) const {
  if (vertices.empty()) throw InvalidPath("empty polyline");
  if (s <= 0.0) return vertices.front();
  if (s >= length()) return vertices.back();
  const auto it = std::upper_bound(cumulative_s.begin(), cumulative_s.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - cumulative_s.begin());
  const double seg = cumulative_s[i] - cumulative_s[i - 1];
  const double t = seg > 0.0 ? (s - cumulative_s[i - 1]) / seg : 0.0;
  return vertices[i - 1] + (vertices[i] - vertices[i - 1]) * t;
}

VertexRole PathPolyline::label_at(double s) const {
  if (labels.empty()) throw InvalidPath("empty polyline");
  const auto it = std::upper_bound(cumulative_s.begin(), cumulative_s.end(), s);
  std::size_t i = static_cast<std::size_t>(it - cumulative_s.begin());
  if (i >= labels.size()) i = labels.size() - 1;
  // label of the segment's start vertex
  return labels[i > 0 ? i - 1 : 0];
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b, double* t_out) {
  const Point2 ab = b - a;
  const double len2 = ab.dot(ab);
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  if (t_out) *t_out = t;
  return distance(p, a + ab * t);
}

double PathPolyline::distance_to(const Point2& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    best = std::min(best, point_segment_distance(p, vertices[i], vertices[i + 1]));
  return best;
}

double PathPolyline::project_arclength(const Point2& p) const {
  double best = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    double t = 0.0;
    const double d = point_segment_distance(p, vertices[i], vertices[i + 1], &t);
    if (d < best - kDupTol) {
      best = d;
      best_s = cumulative_s[i] + t * (cumulative_s[i + 1] - cumulative_s[i]);
    }
  }
  return best_s;
}

double total_turning(const PathPolyline& path) {
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < path.vertices.size(); ++i) {
    const Point2 d0 = path.vertices[i] - path.vertices[i - 1];
    const Point2 d1 = path.vertices[i + 1] - path.vertices[i];
    sum += std::fabs(wrap_angle(std::atan2(d1.y, d1.x) - std::atan2(d0.y, d0.x)));
  }
  return sum;
}

// -- resampling ---------------------------------------------------------------

PathPolyline resample_uniform(const PathPolyline& path, double spacing) {
  if (spacing <= 0.0) throw InvalidPath("spacing must be positive");
  path.validate();

  const double total = path.length();
  std::vector<double> stations;
  for (double s = 0.0; s < total; s += spacing) stations.push_back(s);
  stations.push_back(total);
  // keep original vertices so length and corners are preserved
  stations.insert(stations.end(), path.cumulative_s.begin(), path.cumulative_s.end());
  std::sort(stations.begin(), stations.end());
  stations.erase(std::unique(stations.begin(), stations.end(),
                             [](double a, double b) { return std::fabs(a - b) < kDupTol; }),
                 stations.end());

  PathPolyline out;
  for (const double s : stations) {
    out.vertices.push_back(path.point_at(s));
    out.labels.push_back(path.label_at(s));
  }
  out.rebuild_arclength();
  return out;
}

PathPolyline resample_chordal(const PathPolyline& path, double spacing) {
  if (spacing <= 0.0) throw InvalidPath("spacing must be positive");
  path.validate();

  PathPolyline out;
  out.vertices.push_back(path.vertices.front());
  out.labels.push_back(path.labels.front());

  std::size_t seg = 0;       // current segment index
  Point2 cur = path.vertices.front();
  while (true) {
    // farthest-forward intersection of the circle |p - cur| = spacing with the polyline
    bool advanced = false;
    std::size_t i = seg;
    Point2 next{};
    std::size_t next_seg = 0;
    for (; i + 1 < path.vertices.size(); ++i) {
      const Point2 a = (i == seg) ? cur : path.vertices[i];
      const Point2 b = path.vertices[i + 1];
      if (distance(cur, b) >= spacing - kDupTol) {
        // walk along ab until distance from cur reaches spacing
        const Point2 ab = b - a;
        const double len = ab.norm();
        if (len < kDupTol) continue;
        const Point2 u = ab * (1.0 / len);
        // solve |a + t*u - cur|^2 = spacing^2 for largest valid t in [0, len]
        const Point2 ac = a - cur;
        const double bq = ac.dot(u);
        const double cq = ac.dot(ac) - spacing * spacing;
        const double disc = bq * bq - cq;
        if (disc < 0.0) continue;
        const double t = -bq + std::sqrt(disc);
        if (t < -kDupTol || t > len + kDupTol) continue;
        next = a + u * std::clamp(t, 0.0, len);
        next_seg = i;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
    cur = next;
    seg = next_seg;
    out.vertices.push_back(cur);
    out.labels.push_back(path.labels[std::min(next_seg, path.labels.size() - 1)]);
  }
  const Point2 tail = path.vertices.back();
  if (distance(out.vertices.back(), tail) > kDupTol) {
    out.vertices.push_back(tail);
    out.labels.push_back(path.labels.back());
  }
  out.rebuild_arclength();
  return out;
}

// -- frames -------------------------------------------------------------------

ReferenceFrame build_frame(const PathPolyline& path) {
  if (path.vertices.size() < 3) throw InvalidPath("frame needs at least 3 vertices");
  path.validate();

  const std::size_t n = path.vertices.size();
  std::vector<double> seg_heading(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Point2 d = path.vertices[i + 1] - path.vertices[i];
    seg_heading[i] = std::atan2(d.y, d.x);
  }

  ReferenceFrame frame;
  frame.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    FrameSample& fs = frame.samples[i];
    fs.s = path.cumulative_s[i];
    fs.position = path.vertices[i];
    if (i == 0) {
      fs.heading = seg_heading[0];
    } else if (i + 1 == n) {
      fs.heading = seg_heading[n - 2];
    } else {
      // average of adjacent segment directions
      const double h0 = seg_heading[i - 1];
      fs.heading = h0 + 0.5 * wrap_angle(seg_heading[i] - h0);
    }
  }
  // unwrap headings
  for (std::size_t i = 1; i < n; ++i) {
    const double prev = frame.samples[i - 1].heading;
    frame.samples[i].heading = prev + wrap_angle(frame.samples[i].heading - prev);
  }

  // three-point circumscribed-circle curvature at interior vertices
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Point2& p0 = path.vertices[i - 1];
    const Point2& p1 = path.vertices[i];
    const Point2& p2 = path.vertices[i + 1];
    const Point2 a = p1 - p0;
    const Point2 b = p2 - p1;
    const Point2 c = p2 - p0;
    const double denom = a.norm() * b.norm() * c.norm();
    frame.samples[i].curvature = denom > 0.0 ? 2.0 * a.cross(b) / denom : 0.0;
  }
  if (n >= 3) {
    frame.samples[0].curvature = frame.samples[1].curvature;
    frame.samples[n - 1].curvature = frame.samples[n - 2].curvature;
  }
  return frame;
}

void ReferenceFrame::validate() const {
  if (samples.size() < 2) throw InvalidPath("frame needs at least 2 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].curvature)) throw InvalidPath("non-finite curvature");
    if (i > 0) {
      if (samples[i].s <= samples[i - 1].s) throw InvalidPath("s not strictly increasing");
      if (std::fabs(samples[i].heading - samples[i - 1].heading) > M_PI)
        throw InvalidPath("heading jump exceeds pi");
    }
  }
}

namespace {

std::size_t interval_index(const ReferenceFrame& frame, double s) {
  const auto cmp = [](const FrameSample& fs, double v) { return fs.s < v; };
  auto it = std::lower_bound(frame.samples.begin(), frame.samples.end(), s, cmp);
  std::size_t i = static_cast<std::size_t>(it - frame.samples.begin());
  if (i > 0) --i;
  if (i + 1 >= frame.samples.size()) i = frame.samples.size() - 2;
  return i;
}

}  // namespace

Point2 ReferenceFrame::position_at(double s) const {
  const std::size_t i = interval_index(*this, s);
  const FrameSample& a = samples[i];
  const FrameSample& b = samples[i + 1];
  const double t = (s - a.s) / (b.s - a.s);
  return a.position + (b.position - a.position) * t;
}

double ReferenceFrame::heading_at(double s) const {
  const std::size_t i = interval_index(*this, s);
  const FrameSample& a = samples[i];
  const FrameSample& b = samples[i + 1];
  const double t = (s - a.s) / (b.s - a.s);
  return a.heading + (b.heading - a.heading) * t;
}

std::pair<double, double> project_to_frame(const ReferenceFrame& frame, const Point2& p) {
  frame.validate();
  // initial guess: closest point on the piecewise-affine centerline,
  // ties resolved to the smaller s
  double best = std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < frame.samples.size(); ++i) {
    double t = 0.0;
    const double d =
        point_segment_distance(p, frame.samples[i].position, frame.samples[i + 1].position, &t);
    if (d < best - kDupTol) {
      best = d;
      s = frame.samples[i].s + t * (frame.samples[i + 1].s - frame.samples[i].s);
    }
  }
  if (best > frame.length()) throw OutOfDomain("point too far from frame for projection");

  // refine so the residual is orthogonal to the interpolated heading, making
  // frame_to_global an exact inverse
  for (int iter = 0; iter < 50; ++iter) {
    const double psi = frame.heading_at(s);
    const Point2 tangent{std::cos(psi), std::sin(psi)};
    const double step = (p - frame.position_at(s)).dot(tangent);
    s = std::clamp(s + step, 0.0, frame.length());
    if (std::fabs(step) < 1e-12) break;
  }
  const double psi = frame.heading_at(s);
  const Point2 normal{-std::sin(psi), std::cos(psi)};
  const double e_y = (p - frame.position_at(s)).dot(normal);
  return {s, e_y};
}

std::pair<Point2, double> frame_to_global(const ReferenceFrame& frame, double s, double e_y,
                                          double e_psi) {
  if (s < -kDupTol || s > frame.length() + kDupTol)
    throw OutOfDomain("arclength outside frame domain");
  s = std::clamp(s, 0.0, frame.length());
  const double psi = frame.heading_at(s);
  const Point2 normal{-std::sin(psi), std::cos(psi)};
  return {frame.position_at(s) + normal * e_y, psi + e_psi};
}

// -- polygon operations -------------------------------------------------------

double polygon_area(const std::vector<Point2>& polygon) {
  double a = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) a += polygon[i].cross(polygon[(i + 1) % n]);
  return 0.5 * a;
}

bool point_in_polygon(const std::vector<Point2>& polygon, const Point2& p) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

double distance_to_polygon_boundary(const std::vector<Point2>& polygon, const Point2& p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, point_segment_distance(p, polygon[i], polygon[(i + 1) % n]));
  return best;
}

namespace {

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const auto orient = [](const Point2& p, const Point2& q, const Point2& r) {
    const double v = (q - p).cross(r - p);
    if (v > kDupTol) return 1;
    if (v < -kDupTol) return -1;
    return 0;
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

bool polygon_is_simple(const std::vector<Point2>& polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(polygon[i], polygon[(i + 1) % n], polygon[j], polygon[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

std::vector<Point2> inward_offset(const std::vector<Point2>& polygon, double dist) {
  if (polygon.size() < 3) throw InvalidPath("polygon needs at least 3 vertices");
  if (dist <= 0.0) throw InvalidPath("offset distance must be positive");
  if (!polygon_is_simple(polygon)) throw InvalidPath("polygon is not simple");

  // work on a CCW copy; interior is left of the edges
  std::vector<Point2> poly = polygon;
  if (polygon_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
  const std::size_t n = poly.size();

  struct OffsetEdge {
    Point2 a, b, dir;
  };
  std::vector<OffsetEdge> edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    const Point2 d = (q - p).normalized();
    const Point2 shift = d.left_normal() * dist;
    edges[i] = {p + shift, q + shift, d};
  }

  std::vector<Point2> ring;
  for (std::size_t i = 0; i < n; ++i) {
    const OffsetEdge& e0 = edges[i];
    const OffsetEdge& e1 = edges[(i + 1) % n];
    const double turn = e0.dir.cross(e1.dir);
    if (turn > kDupTol) {
      // left (convex) corner: offset edges intersect, miter join
      const double denom = e0.dir.cross(e1.dir);
      const double t = (e1.a - e0.a).cross(e1.dir) / denom;
      ring.push_back(e0.a + e0.dir * t);
    } else if (turn < -kDupTol) {
      // reflex corner: arc join around the original vertex, sampled
      const Point2& center = poly[(i + 1) % n];
      double a0 = std::atan2(e0.b.y - center.y, e0.b.x - center.x);
      double a1 = std::atan2(e1.a.y - center.y, e1.a.x - center.x);
      double sweep = wrap_angle(a1 - a0);
      if (sweep > 0.0) sweep -= 2.0 * M_PI;  // go clockwise around the vertex
      const int steps = std::max(2, static_cast<int>(std::ceil(std::fabs(sweep) / 0.17)));
      for (int k = 0; k <= steps; ++k) {
        const double a = a0 + sweep * static_cast<double>(k) / steps;
        ring.push_back(center + Point2{std::cos(a), std::sin(a)} * dist);
      }
    } else {
      ring.push_back(e0.b);
    }
  }

  // drop vertices pushed past the medial axis (narrow necks, inverted corners)
  std::vector<Point2> filtered;
  for (const Point2& p : ring) {
    if (distance_to_polygon_boundary(poly, p) >= dist - 1e-7 && point_in_polygon(poly, p))
      filtered.push_back(p);
  }
  // dedupe consecutive
  std::vector<Point2> out;
  for (const Point2& p : filtered) {
    if (out.empty() || distance(out.back(), p) > 1e-7) out.push_back(p);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) < 1e-7) out.pop_back();

  if (out.size() < 3 || polygon_area(out) < 1e-9) throw EmptyOffset("erosion empties polygon");
  return out;
}

// -- corner cutting -----------------------------------------------------------

PathPolyline corner_cut_smooth(const PathPolyline& path, int iterations) {
  PathPolyline out = path;
  for (int it = 0; it < iterations; ++it) {
    std::vector<Point2> next = out.vertices;
    for (std::size_t i = 1; i + 1 < out.vertices.size(); ++i)
      next[i] = (out.vertices[i - 1] + out.vertices[i] * 2.0 + out.vertices[i + 1]) * 0.25;
    out.vertices = std::move(next);
  }
  out.rebuild_arclength();
  return out;
}

}  // namespace fieldsmooth
