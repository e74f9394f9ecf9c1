#include "fieldsmooth/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>

namespace fieldsmooth {

long CoverageRaster::covered_cells() const {
  return std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; });
}

long CoverageRaster::overlap_cells() const {
  return std::count_if(counts.begin(), counts.end(), [](int c) { return c >= 2; });
}

CoverageRaster make_raster(const Point2& lo, const Point2& hi, double cell) {
  if (cell <= 0.0) throw InputError("raster cell size must be positive");
  if (hi.x <= lo.x || hi.y <= lo.y) throw InputError("empty raster bounds");
  CoverageRaster r;
  r.origin = lo;
  r.cell = cell;
  r.width = static_cast<int>(std::ceil((hi.x - lo.x) / cell));
  r.height = static_cast<int>(std::ceil((hi.y - lo.y) / cell));
  r.counts.assign(static_cast<std::size_t>(r.width) * r.height, 0);
  return r;
}

void accumulate_swath(CoverageRaster& raster, const PathPolyline& path, double w) {
  if (w <= 0.0) throw InputError("operating width must be positive");
  path.validate();
  const double half = 0.5 * w;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> last_s(raster.counts.size(), nan);

  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Point2 a = path.vertices[i];
    const Point2 b = path.vertices[i + 1];
    const double seg_len = distance(a, b);
    const double s0 = path.cumulative_s[i];

    const int ix0 = std::max(0, static_cast<int>(std::floor(
                                    (std::min(a.x, b.x) - half - raster.origin.x) / raster.cell)));
    const int ix1 = std::min(raster.width - 1,
                             static_cast<int>(std::ceil(
                                 (std::max(a.x, b.x) + half - raster.origin.x) / raster.cell)));
    const int iy0 = std::max(0, static_cast<int>(std::floor(
                                    (std::min(a.y, b.y) - half - raster.origin.y) / raster.cell)));
    const int iy1 = std::min(raster.height - 1,
                             static_cast<int>(std::ceil(
                                 (std::max(a.y, b.y) + half - raster.origin.y) / raster.cell)));

    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int ix = ix0; ix <= ix1; ++ix) {
        const Point2 c = raster.center(ix, iy);
        double t = 0.0;
        if (point_segment_distance(c, a, b, &t) > half) continue;
        const std::size_t idx = static_cast<std::size_t>(iy) * raster.width + ix;
        const double s = s0 + t * seg_len;
        if (std::isnan(last_s[idx])) {
          ++raster.at(ix, iy);
          last_s[idx] = s;
        } else if (s - last_s[idx] > w) {
          ++raster.at(ix, iy);
          last_s[idx] = s;
        } else {
          last_s[idx] = std::max(last_s[idx], s);
        }
      }
    }
  }
}

CoverageRaster rasterize_swath(const PathPolyline& path, double w, double cell, const Point2& lo,
                               const Point2& hi) {
  CoverageRaster r = make_raster(lo, hi, cell);
  accumulate_swath(r, path, w);
  return r;
}

GapReport find_gaps(const CoverageRaster& raster, const std::vector<Point2>& field_polygon) {
  GapReport report;
  const std::size_t n_cells = raster.counts.size();
  std::vector<char> gap(n_cells, 0);
  for (int iy = 0; iy < raster.height; ++iy) {
    for (int ix = 0; ix < raster.width; ++ix) {
      if (raster.at(ix, iy) != 0) continue;
      if (!point_in_polygon(field_polygon, raster.center(ix, iy))) continue;
      gap[static_cast<std::size_t>(iy) * raster.width + ix] = 1;
      ++report.gap_cells;
    }
  }

  std::vector<char> seen(n_cells, 0);
  for (int iy = 0; iy < raster.height; ++iy) {
    for (int ix = 0; ix < raster.width; ++ix) {
      const std::size_t start = static_cast<std::size_t>(iy) * raster.width + ix;
      if (!gap[start] || seen[start]) continue;
      GapRegion region;
      std::deque<std::pair<int, int>> queue{{ix, iy}};
      seen[start] = 1;
      while (!queue.empty()) {
        const auto [cx, cy] = queue.front();
        queue.pop_front();
        region.cells.push_back({cx, cy});
        const int nb[4][2] = {{cx + 1, cy}, {cx - 1, cy}, {cx, cy + 1}, {cx, cy - 1}};
        for (const auto& [nx, ny] : nb) {
          if (!raster.contains(nx, ny)) continue;
          const std::size_t id = static_cast<std::size_t>(ny) * raster.width + nx;
          if (gap[id] && !seen[id]) {
            seen[id] = 1;
            queue.push_back({nx, ny});
          }
        }
      }
      region.area = region.cells.size() * raster.cell * raster.cell;
      report.regions.push_back(std::move(region));
    }
  }
  std::sort(report.regions.begin(), report.regions.end(),
            [](const GapRegion& a, const GapRegion& b) { return a.area > b.area; });
  return report;
}

namespace {

double bernstein3(int k, double t) {
  const double u = 1.0 - t;
  switch (k) {
    case 0: return u * u * u;
    case 1: return 3.0 * u * u * t;
    case 2: return 3.0 * u * t * t;
    default: return t * t * t;
  }
}

}  // namespace

PathPolyline bezier3_baseline(const std::vector<Point2>& points, double ds) {
  if (points.size() < 4) throw InvalidPath("Bezier fit needs at least 4 points");
  if (ds <= 0.0) throw InvalidPath("spacing must be positive");

  // chord-length parameters
  std::vector<double> t(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i)
    t[i] = t[i - 1] + distance(points[i - 1], points[i]);
  const double total = t.back();
  if (total <= 0.0) throw InvalidPath("degenerate point set");
  for (double& v : t) v /= total;

  // endpoints fixed; least squares over the two interior control points.
  // normal equations of size 2 per coordinate, shared Gram matrix.
  const Point2 b0 = points.front();
  const Point2 b3 = points.back();
  double g11 = 0.0, g12 = 0.0, g22 = 0.0;
  Point2 r1, r2;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double f0 = bernstein3(0, t[i]);
    const double f1 = bernstein3(1, t[i]);
    const double f2 = bernstein3(2, t[i]);
    const double f3 = bernstein3(3, t[i]);
    const Point2 resid = points[i] - b0 * f0 - b3 * f3;
    g11 += f1 * f1;
    g12 += f1 * f2;
    g22 += f2 * f2;
    r1 = r1 + resid * f1;
    r2 = r2 + resid * f2;
  }
  const double det = g11 * g22 - g12 * g12;
  Point2 b1, b2;
  if (std::fabs(det) < 1e-12 * std::max(1.0, g11 * g22)) {
    // rank deficient: straight segment
    b1 = b0 + (b3 - b0) * (1.0 / 3.0);
    b2 = b0 + (b3 - b0) * (2.0 / 3.0);
  } else {
    b1 = (r1 * g22 - r2 * g12) * (1.0 / det);
    b2 = (r2 * g11 - r1 * g12) * (1.0 / det);
  }

  // dense evaluation, then resample at ds
  const int dense = std::max(200, static_cast<int>(std::ceil(total / (0.1 * ds))));
  PathPolyline curve;
  curve.vertices.reserve(dense + 1);
  for (int i = 0; i <= dense; ++i) {
    const double u = static_cast<double>(i) / dense;
    const Point2 p = b0 * bernstein3(0, u) + b1 * bernstein3(1, u) + b2 * bernstein3(2, u) +
                     b3 * bernstein3(3, u);
    curve.vertices.push_back(p);
    curve.labels.push_back(VertexRole::Headland);
  }
  curve.rebuild_arclength();
  return resample_chordal(curve, ds);
}

void write_pgm(const CoverageRaster& raster, std::ostream& os) {
  const int max_count = *std::max_element(raster.counts.begin(), raster.counts.end());
  const int maxval = std::max(1, std::min(max_count, 255));
  os << "P2\n" << raster.width << " " << raster.height << "\n" << maxval << "\n";
  for (int iy = raster.height - 1; iy >= 0; --iy) {  // image rows top-down
    for (int ix = 0; ix < raster.width; ++ix) {
      if (ix) os << ' ';
      os << std::min(raster.at(ix, iy), maxval);
    }
    os << '\n';
  }
}

void write_raster_csv(const CoverageRaster& raster, std::ostream& os) {
  os << "ix,iy,x,y,count\n";
  for (int iy = 0; iy < raster.height; ++iy) {
    for (int ix = 0; ix < raster.width; ++ix) {
      if (raster.at(ix, iy) == 0) continue;
      const Point2 c = raster.center(ix, iy);
      os << ix << ',' << iy << ',' << c.x << ',' << c.y << ',' << raster.at(ix, iy) << '\n';
    }
  }
}

}  // namespace fieldsmooth
