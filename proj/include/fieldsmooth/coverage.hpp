#pragma once

#include <iosfwd>
#include <vector>

#include "fieldsmooth/geometry.hpp"

namespace fieldsmooth {

/// Pass-count raster of the sprayed area. Row-major, cell (0,0) at origin,
/// y grows with the row index.
struct CoverageRaster {
  Point2 origin;
  double cell = 0.1;
  int width = 0;
  int height = 0;
  std::vector<int> counts;

  int& at(int ix, int iy) { return counts[static_cast<std::size_t>(iy) * width + ix]; }
  int at(int ix, int iy) const { return counts[static_cast<std::size_t>(iy) * width + ix]; }
  Point2 center(int ix, int iy) const {
    return {origin.x + (ix + 0.5) * cell, origin.y + (iy + 0.5) * cell};
  }
  bool contains(int ix, int iy) const { return ix >= 0 && ix < width && iy >= 0 && iy < height; }

  long covered_cells() const;
  long overlap_cells() const;  // pass count >= 2
  double covered_area() const { return covered_cells() * cell * cell; }
};

CoverageRaster make_raster(const Point2& lo, const Point2& hi, double cell);

/// Stamps the swath of width w centred on the path into an existing raster.
/// A cell is re-counted only when revisits are separated by more than w of
/// arclength, so one contiguous pass counts once.
void accumulate_swath(CoverageRaster& raster, const PathPolyline& path, double w);

/// Convenience: build a raster over [lo, hi] and stamp one path.
CoverageRaster rasterize_swath(const PathPolyline& path, double w, double cell, const Point2& lo,
                               const Point2& hi);

struct GapRegion {
  std::vector<std::pair<int, int>> cells;  // (ix, iy)
  double area = 0.0;
};

struct GapReport {
  long gap_cells = 0;
  std::vector<GapRegion> regions;  // sorted by area, largest first
};

/// Unswept field-interior cells, grouped into 4-connected regions.
GapReport find_gaps(const CoverageRaster& raster, const std::vector<Point2>& field_polygon);

/// Least-squares cubic Bezier through the points (chord-length parameters,
/// endpoints interpolated), sampled at ds. Degenerate fits fall back to the
/// straight segment between the endpoints.
PathPolyline bezier3_baseline(const std::vector<Point2>& points, double ds = 1.0);

void write_pgm(const CoverageRaster& raster, std::ostream& os);
void write_raster_csv(const CoverageRaster& raster, std::ostream& os);

}  // namespace fieldsmooth
