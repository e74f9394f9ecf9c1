#include "fieldsmooth/reference.hpp"

#include <algorithm>
#include <limits>

namespace fieldsmooth {

std::string to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::HeadlandCorner: return "headland_corner";
    case SegmentKind::HeadlandToLane: return "headland_to_lane";
    case SegmentKind::LaneToHeadland: return "lane_to_headland";
    case SegmentKind::LaneToLane: return "lane_to_lane";
  }
  return "?";
}

namespace {

double heading_change(const PathPolyline& path, std::size_t i) {
  const Point2 d0 = path.vertices[i] - path.vertices[i - 1];
  const Point2 d1 = path.vertices[i + 1] - path.vertices[i];
  return wrap_angle(std::atan2(d1.y, d1.x) - std::atan2(d0.y, d0.x));
}

std::size_t index_at_or_after(const PathPolyline& path, double s) {
  const auto it = std::lower_bound(path.cumulative_s.begin(), path.cumulative_s.end(), s - 1e-9);
  return std::min<std::size_t>(it - path.cumulative_s.begin(), path.size() - 1);
}

std::size_t index_at_or_before(const PathPolyline& path, double s) {
  const auto it = std::upper_bound(path.cumulative_s.begin(), path.cumulative_s.end(), s + 1e-9);
  return it == path.cumulative_s.begin() ? 0 : static_cast<std::size_t>(it - path.cumulative_s.begin()) - 1;
}

bool is_junction_pair(VertexRole a, VertexRole b) {
  return (a == VertexRole::Headland && b == VertexRole::Lane) ||
         (a == VertexRole::Lane && b == VertexRole::Headland);
}

}  // namespace

std::vector<EdgySegment> detect_edgy_segments(const PathPolyline& path, double theta_thresh,
                                              double r_min) {
  path.validate();
  const std::size_t n = path.size();
  std::vector<EdgySegment> segments;

  // label-change transitions
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (is_junction_pair(path.labels[i], path.labels[i + 1])) {
      EdgySegment seg;
      seg.i0 = i;
      seg.i1 = i + 1;
      seg.apex = i;
      seg.kind = path.labels[i] == VertexRole::Headland ? SegmentKind::HeadlandToLane
                                                        : SegmentKind::LaneToHeadland;
      segments.push_back(seg);
    }
  }
  const auto inside_transition = [&](std::size_t i) {
    for (const EdgySegment& seg : segments)
      if (i >= seg.i0 && i <= seg.i1) return true;
    return false;
  };

  // heading-change corners, merged when closer than 3*r_min along the path
  std::vector<std::size_t> edgy;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::fabs(heading_change(path, i)) > theta_thresh && !inside_transition(i))
      edgy.push_back(i);
  }
  std::size_t k = 0;
  while (k < edgy.size()) {
    std::size_t kk = k;
    while (kk + 1 < edgy.size() &&
           path.cumulative_s[edgy[kk + 1]] - path.cumulative_s[edgy[kk]] <= 3.0 * r_min)
      ++kk;
    EdgySegment seg;
    seg.i0 = edgy[k];
    seg.i1 = edgy[kk];
    seg.kind = SegmentKind::HeadlandCorner;
    double best = 0.0;
    seg.apex = edgy[k];
    for (std::size_t m = k; m <= kk; ++m) {
      const double c = std::fabs(heading_change(path, edgy[m]));
      if (c > best) {
        best = c;
        seg.apex = edgy[m];
      }
    }
    segments.push_back(seg);
    k = kk + 1;
  }

  std::sort(segments.begin(), segments.end(),
            [](const EdgySegment& a, const EdgySegment& b) { return a.i0 < b.i0; });
  return segments;
}

void expand_segments(const PathPolyline& path, std::vector<EdgySegment>& segments,
                     double corner_half, double transition_ext) {
  for (EdgySegment& seg : segments) {
    if (seg.kind == SegmentKind::HeadlandCorner) {
      const double s_apex = path.cumulative_s[seg.apex];
      seg.i0 = index_at_or_after(path, s_apex - corner_half);
      seg.i1 = index_at_or_before(path, s_apex + corner_half);
    } else {
      const double s0 = path.cumulative_s[seg.i0];
      const double s1 = path.cumulative_s[seg.i1];
      seg.i0 = index_at_or_after(path, s0 - transition_ext);
      seg.i1 = index_at_or_before(path, s1 + transition_ext);
    }
    if (seg.i0 < 1) seg.i0 = 1;
    if (seg.i1 + 1 >= path.size()) seg.i1 = path.size() - 2;
  }

  // merge overlapping corner/transition pairs into the transition; separate
  // remaining overlaps at the midpoint
  std::sort(segments.begin(), segments.end(),
            [](const EdgySegment& a, const EdgySegment& b) { return a.i0 < b.i0; });
  std::vector<EdgySegment> merged;
  for (const EdgySegment& seg : segments) {
    if (!merged.empty() && seg.i0 <= merged.back().i1 + 1) {
      EdgySegment& prev = merged.back();
      const bool prev_corner = prev.kind == SegmentKind::HeadlandCorner;
      const bool cur_corner = seg.kind == SegmentKind::HeadlandCorner;
      if (prev_corner != cur_corner) {
        // keep the transition, absorb the corner span; the absorbed corner
        // makes the instance an S-curve that needs extra settle room, so the
        // end furthest from the corner grows by the corner half-width
        prev.i1 = std::max(prev.i1, seg.i1);
        if (prev_corner) {
          // corner leads: extend the tail
          prev.kind = seg.kind;
          prev.apex = seg.apex;
          prev.i1 = index_at_or_before(path, path.cumulative_s[prev.i1] + corner_half);
        } else {
          // corner trails: extend the head
          prev.i0 = index_at_or_after(path, path.cumulative_s[prev.i0] - corner_half);
        }
        if (prev.i0 < 1) prev.i0 = 1;
        if (prev.i1 + 1 >= path.size()) prev.i1 = path.size() - 2;
        prev.merged = true;
        continue;
      }
      if (prev_corner && cur_corner) {
        prev.i1 = std::max(prev.i1, seg.i1);
        continue;
      }
      // two transitions: split at the midpoint
      EdgySegment cur = seg;
      const std::size_t mid = (prev.i1 + cur.i0) / 2;
      prev.i1 = mid;
      cur.i0 = mid + 1;
      if (cur.i1 > cur.i0) merged.push_back(cur);
      continue;
    }
    merged.push_back(seg);
  }
  segments = std::move(merged);
}

ReferencePath build_pwa5_reference(const EdgySegment& segment, const PathPolyline& path,
                                   const std::vector<Point2>& contour, double w,
                                   const VehicleParams& params, double ds,
                                   int corner_cut_iterations) {
  if (segment.kind != SegmentKind::HeadlandCorner)
    throw InvalidPath("PWA5 reference requires a headland corner segment");
  if (segment.apex == 0 || segment.apex + 1 >= path.size())
    throw InvalidPath("corner apex must be interior");

  const Point2 apex = path.vertices[segment.apex];

  // anchors A/E at +-L_edge of path arclength around the apex; the segment may
  // extend further, leaving straight lead-in/out stretches of the original
  // path in the reference so the corner cut rounds the kinks at A and E too
  // (a kink at the very first sample would be untrackable and cost slack)
  const double l_edge = std::max(2.0 * params.min_turn_radius(), 0.5 * w);
  const std::size_t na = static_cast<std::size_t>(std::lround(l_edge / ds));
  const std::size_t ia = segment.apex > segment.i0 + na ? segment.apex - na : segment.i0;
  const std::size_t ie = std::min(segment.apex + na, segment.i1);
  const Point2 a_pt = path.vertices[ia];
  const Point2 e_pt = path.vertices[ie];

  // outward bisector of the corner (towards the contour)
  const Point2 u_in = (path.vertices[segment.apex] - path.vertices[segment.apex - 1]).normalized();
  const Point2 u_out = (path.vertices[segment.apex + 1] - path.vertices[segment.apex]).normalized();
  const Point2 outward = (u_in - u_out).normalized();
  if (outward.norm() < 0.5)
    throw FallbackDubinsCorner("degenerate corner, no bisector");

  // nearest contour vertex in the outward direction anchors the tip
  double best_d = std::numeric_limits<double>::infinity();
  Point2 corner_vertex;
  for (const Point2& c : contour) {
    const double d = distance(apex, c);
    if (d < best_d) {
      best_d = d;
      corner_vertex = c;
    }
  }
  const Point2 dir = (corner_vertex - apex).normalized();
  if (best_d > 3.0 * w || dir.dot(outward) <= std::cos(75.0 * M_PI / 180.0))
    throw FallbackDubinsCorner("contour corner not aligned with the bisector");

  // tip T at exactly w/2 from the contour corner, never past the apex inward
  Point2 tip = apex;
  if (best_d > 0.5 * w) tip = corner_vertex - dir * (0.5 * w);

  // the corner cut pulls the tip back towards the chord; scale the tip
  // outward until the cut polyline itself still reaches within w/2 of the
  // contour corner, which is what keeps the swath gap-free there
  PathPolyline smoothed;
  for (int scale_iter = 0;; ++scale_iter) {
    const Point2 b_pt = (a_pt + tip) * 0.5;
    const Point2 d_pt = (tip + e_pt) * 0.5;
    std::vector<Point2> anchors;
    for (std::size_t i = segment.i0; i <= ia; ++i) anchors.push_back(path.vertices[i]);
    anchors.push_back(b_pt);
    anchors.push_back(tip);
    anchors.push_back(d_pt);
    for (std::size_t i = ie; i <= segment.i1; ++i) anchors.push_back(path.vertices[i]);
    PathPolyline dense = resample_chordal(PathPolyline(anchors, VertexRole::Headland), ds);
    smoothed = corner_cut_smooth(dense, corner_cut_iterations);
    if (best_d <= 0.5 * w || scale_iter >= 8) break;
    double reach = std::numeric_limits<double>::infinity();
    for (const Point2& p : smoothed.vertices) reach = std::min(reach, distance(p, corner_vertex));
    const double deficit = reach - 0.5 * w;
    if (deficit <= 1e-3) break;
    // never push the tip past the contour corner itself
    if (distance(tip, corner_vertex) <= deficit) break;
    tip = tip + dir * deficit;
  }

  ReferencePath ref;
  ref.frame = build_frame(smoothed);
  ref.kind = SegmentKind::HeadlandCorner;
  ref.problem = ProblemType::HeadlandSmoothing;
  ref.side_constraint = SideConstraint::Upper;
  ref.spacing = ds;
  ref.entry = {path.vertices[segment.i0], std::atan2(u_in.y, u_in.x)};
  ref.exit = {path.vertices[segment.i1], std::atan2(u_out.y, u_out.x)};

  // +e_y is left of travel; the field interior is opposite the outward bisector
  const std::size_t mid = ref.frame.size() / 2;
  const double psi = ref.frame.samples[mid].heading;
  const Point2 left{-std::sin(psi), std::cos(psi)};
  ref.interior_sign = left.dot(outward) > 0.0 ? -1.0 : 1.0;
  return ref;
}

ReferencePath build_dubins_reference(const EdgySegment& segment, const PathPolyline& path,
                                     double r_dubins, double l_ext, double ds) {
  if (segment.i0 >= segment.i1 || segment.i1 >= path.size())
    throw InvalidPath("invalid segment range");

  // tangents taken from the surrounding path
  const std::size_t i0 = segment.i0;
  const std::size_t i1 = segment.i1;
  const Point2 t_in =
      (i0 > 0 ? path.vertices[i0] - path.vertices[i0 - 1] : path.vertices[i0 + 1] - path.vertices[i0])
          .normalized();
  const Point2 t_out = (i1 + 1 < path.size() ? path.vertices[i1 + 1] - path.vertices[i1]
                                             : path.vertices[i1] - path.vertices[i1 - 1])
                           .normalized();
  const Config entry{path.vertices[i0], std::atan2(t_in.y, t_in.x)};
  const Config exit{path.vertices[i1], std::atan2(t_out.y, t_out.x)};

  // the straight extensions must not eat the room a simple fillet needs; when
  // a side of the junction is tight (adjacent junctions), shorten its
  // extension first
  const double s_apex = segment.apex > i0 && segment.apex < i1
                            ? path.cumulative_s[segment.apex]
                            : 0.5 * (path.cumulative_s[i0] + path.cumulative_s[i1]);
  const double room_in = s_apex - path.cumulative_s[i0];
  const double room_out = path.cumulative_s[i1] - s_apex;
  const double turn = std::fabs(wrap_angle(exit.heading - entry.heading));
  const double tangent_len =
      turn < M_PI * 0.9 ? r_dubins * std::tan(0.5 * turn) : std::max(room_in, room_out);
  const double l_in = std::clamp(room_in - tangent_len, 0.5, l_ext);
  const double l_out = std::clamp(room_out - tangent_len, 0.5, l_ext);

  const Config q0{entry.position + t_in * l_in, entry.heading};
  const Config q1{exit.position - t_out * l_out, exit.heading};
  const DubinsPath dubins = shortest_dubins(q0, q1, r_dubins);
  const double total = l_in + dubins.length() + l_out;

  // analytic frame: exact arclength grid, piecewise-constant curvature
  ReferencePath ref;
  std::vector<double> stations;
  for (double s = 0.0; s < total - 1e-9; s += ds) stations.push_back(s);
  stations.push_back(total);
  ref.frame.samples.reserve(stations.size());
  for (const double s : stations) {
    FrameSample fs;
    fs.s = s;
    if (s <= l_in) {
      fs.position = entry.position + t_in * s;
      fs.heading = entry.heading;
      fs.curvature = s < l_in - 1e-9 ? 0.0 : dubins_curvature_at(dubins, 0.0);
    } else if (s <= l_in + dubins.length()) {
      const Config q = dubins_config_at(dubins, s - l_in);
      fs.position = q.position;
      fs.heading = q.heading;
      fs.curvature = s < l_in + dubins.length() - 1e-9
                         ? dubins_curvature_at(dubins, s - l_in)
                         : 0.0;
    } else {
      fs.position = q1.position + t_out * (s - l_in - dubins.length());
      fs.heading = exit.heading;
      fs.curvature = 0.0;
    }
    ref.frame.samples.push_back(fs);
  }
  // unwrap headings
  for (std::size_t i = 1; i < ref.frame.samples.size(); ++i) {
    const double prev = ref.frame.samples[i - 1].heading;
    ref.frame.samples[i].heading = prev + wrap_angle(ref.frame.samples[i].heading - prev);
  }

  ref.kind = segment.kind;
  ref.problem = ProblemType::TransitionSmoothing;
  ref.side_constraint = SideConstraint::None;
  ref.spacing = ds;
  ref.entry = entry;
  ref.exit = exit;
  return ref;
}

std::size_t compute_weight_index(const ReferencePath& ref, const PathPolyline& headland,
                                 double radius) {
  const std::size_t n = ref.frame.size();
  if (ref.kind == SegmentKind::HeadlandToLane) {
    for (std::size_t i = n; i-- > 0;) {
      if (headland.distance_to(ref.frame.samples[i].position) <= radius) return i;
    }
    return 0;
  }
  if (ref.kind == SegmentKind::LaneToHeadland) {
    for (std::size_t i = 0; i < n; ++i) {
      if (headland.distance_to(ref.frame.samples[i].position) <= radius) return i;
    }
    return n - 1;
  }
  return 0;
}

double default_extension_length(double r_dubins) {
  return std::clamp(0.5 * r_dubins, 2.0, 5.0);
}

double transition_half_length(double r_dubins) {
  // room for a simple fillet at a near-perpendicular junction: tangent length
  // R*tan(55 deg) plus the straight reference extension
  return 1.5 * r_dubins + default_extension_length(r_dubins);
}

}  // namespace fieldsmooth
