#pragma once

#include <array>
#include <string>

#include "fieldsmooth/geometry.hpp"

namespace fieldsmooth {

/// Oriented planar configuration.
struct Config {
  Point2 position;
  double heading = 0.0;  // rad
};

enum class DubinsWord { LSL, RSR, LSR, RSL, RLR, LRL };

std::string to_string(DubinsWord word);

struct DubinsPath {
  DubinsWord word = DubinsWord::LSL;
  std::array<double, 3> segment_lengths{};  // arclengths, m
  double radius = 0.0;                      // R_Dubins, m
  Config start;

  double length() const { return segment_lengths[0] + segment_lengths[1] + segment_lengths[2]; }
  /// Signed curvature of segment i (+1/R left, -1/R right, 0 straight).
  double segment_curvature(int i) const;
};

/// Shortest path among all six words; ties resolve to the fixed word order
/// LSL < RSR < LSR < RSL < RLR < LRL.
DubinsPath shortest_dubins(const Config& q0, const Config& q1, double radius);

/// Length of one specific word, or +inf when that word is infeasible.
double dubins_word_length(const Config& q0, const Config& q1, double radius, DubinsWord word);

/// Configuration at arclength s along the path (right-continuous heading).
Config dubins_config_at(const DubinsPath& path, double s);

/// Curvature at arclength s (right-continuous at junctions).
double dubins_curvature_at(const DubinsPath& path, double s);

/// Vertices at arclength multiples of `spacing` plus the two segment
/// junctions and the endpoint, each present exactly once.
PathPolyline sample_dubins(const DubinsPath& path, double spacing);

}  // namespace fieldsmooth
