#include "fieldsmooth/dubins.hpp"

#include <algorithm>
#include <limits>

namespace fieldsmooth {

namespace {

double mod2pi(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a;
}

struct WordParams {
  bool valid = false;
  double t = 0.0, p = 0.0, q = 0.0;  // normalised segment lengths
};

// Closed-form tangent-circle constructions for the six words, in normalised
// coordinates (distance d = |q1 - q0| / R, headings alpha, beta relative to
// the connecting line).

WordParams word_lsl(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double p_sq = 2.0 + d * d - 2.0 * std::cos(alpha - beta) + 2.0 * d * (sa - sb);
  if (p_sq < 0.0) return {};
  const double tmp = std::atan2(cb - ca, d + sa - sb);
  return {true, mod2pi(-alpha + tmp), std::sqrt(p_sq), mod2pi(beta - tmp)};
}

WordParams word_rsr(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double p_sq = 2.0 + d * d - 2.0 * std::cos(alpha - beta) + 2.0 * d * (sb - sa);
  if (p_sq < 0.0) return {};
  const double tmp = std::atan2(ca - cb, d - sa + sb);
  return {true, mod2pi(alpha - tmp), std::sqrt(p_sq), mod2pi(-beta + tmp)};
}

WordParams word_lsr(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double p_sq = -2.0 + d * d + 2.0 * std::cos(alpha - beta) + 2.0 * d * (sa + sb);
  if (p_sq < 0.0) return {};
  const double p = std::sqrt(p_sq);
  const double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
  return {true, mod2pi(-alpha + tmp), p, mod2pi(-mod2pi(beta) + tmp)};
}

WordParams word_rsl(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double p_sq = d * d - 2.0 + 2.0 * std::cos(alpha - beta) - 2.0 * d * (sa + sb);
  if (p_sq < 0.0) return {};
  const double p = std::sqrt(p_sq);
  const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
  return {true, mod2pi(alpha - tmp), p, mod2pi(beta - tmp)};
}

WordParams word_rlr(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double tmp = (6.0 - d * d + 2.0 * std::cos(alpha - beta) + 2.0 * d * (sa - sb)) / 8.0;
  if (std::fabs(tmp) > 1.0) return {};
  const double p = mod2pi(2.0 * M_PI - std::acos(tmp));
  const double t =
      mod2pi(alpha - std::atan2(ca - cb, d - sa + sb) + mod2pi(p / 2.0));
  return {true, t, p, mod2pi(alpha - beta - t + mod2pi(p))};
}

WordParams word_lrl(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double tmp = (6.0 - d * d + 2.0 * std::cos(alpha - beta) + 2.0 * d * (sb - sa)) / 8.0;
  if (std::fabs(tmp) > 1.0) return {};
  const double p = mod2pi(2.0 * M_PI - std::acos(tmp));
  const double t =
      mod2pi(-alpha - std::atan2(ca - cb, d + sa - sb) + p / 2.0);
  return {true, t, p, mod2pi(mod2pi(beta) - alpha - t + mod2pi(p))};
}

WordParams solve_word(DubinsWord word, double alpha, double beta, double d) {
  switch (word) {
    case DubinsWord::LSL: return word_lsl(alpha, beta, d);
    case DubinsWord::RSR: return word_rsr(alpha, beta, d);
    case DubinsWord::LSR: return word_lsr(alpha, beta, d);
    case DubinsWord::RSL: return word_rsl(alpha, beta, d);
    case DubinsWord::RLR: return word_rlr(alpha, beta, d);
    case DubinsWord::LRL: return word_lrl(alpha, beta, d);
  }
  return {};
}

constexpr std::array<DubinsWord, 6> kWordOrder = {DubinsWord::LSL, DubinsWord::RSR,
                                                  DubinsWord::LSR, DubinsWord::RSL,
                                                  DubinsWord::RLR, DubinsWord::LRL};

// segment turn signs per word: +1 left, -1 right, 0 straight
constexpr std::array<std::array<int, 3>, 6> kWordSigns = {{
    {1, 0, 1},    // LSL
    {-1, 0, -1},  // RSR
    {1, 0, -1},   // LSR
    {-1, 0, 1},   // RSL
    {-1, 1, -1},  // RLR
    {1, -1, 1},   // LRL
}};

void normalize(const Config& q0, const Config& q1, double radius, double* alpha, double* beta,
               double* d) {
  const Point2 diff = q1.position - q0.position;
  const double theta = std::atan2(diff.y, diff.x);
  *d = diff.norm() / radius;
  *alpha = mod2pi(q0.heading - theta);
  *beta = mod2pi(q1.heading - theta);
}

}  // namespace

std::string to_string(DubinsWord word) {
  switch (word) {
    case DubinsWord::LSL: return "LSL";
    case DubinsWord::RSR: return "RSR";
    case DubinsWord::LSR: return "LSR";
    case DubinsWord::RSL: return "RSL";
    case DubinsWord::RLR: return "RLR";
    case DubinsWord::LRL: return "LRL";
  }
  return "?";
}

double DubinsPath::segment_curvature(int i) const {
  return kWordSigns[static_cast<int>(word)][i] / radius;
}

double dubins_word_length(const Config& q0, const Config& q1, double radius, DubinsWord word) {
  double alpha = 0.0, beta = 0.0, d = 0.0;
  normalize(q0, q1, radius, &alpha, &beta, &d);
  const WordParams wp = solve_word(word, alpha, beta, d);
  if (!wp.valid) return std::numeric_limits<double>::infinity();
  return (wp.t + wp.p + wp.q) * radius;
}

DubinsPath shortest_dubins(const Config& q0, const Config& q1, double radius) {
  if (radius <= 0.0) throw InvalidPath("Dubins radius must be positive");
  double alpha = 0.0, beta = 0.0, d = 0.0;
  normalize(q0, q1, radius, &alpha, &beta, &d);

  DubinsPath best;
  double best_len = std::numeric_limits<double>::infinity();
  for (const DubinsWord word : kWordOrder) {
    const WordParams wp = solve_word(word, alpha, beta, d);
    if (!wp.valid) continue;
    const double len = (wp.t + wp.p + wp.q) * radius;
    if (len < best_len) {
      best_len = len;
      best.word = word;
      best.segment_lengths = {wp.t * radius, wp.p * radius, wp.q * radius};
    }
  }
  if (!std::isfinite(best_len)) throw InvalidPath("no Dubins word found");  // cannot happen
  best.radius = radius;
  best.start = q0;
  return best;
}

Config dubins_config_at(const DubinsPath& path, double s) {
  s = std::clamp(s, 0.0, path.length());
  Config q = path.start;
  for (int i = 0; i < 3; ++i) {
    const double seg = path.segment_lengths[i];
    const double m = std::min(s, seg);
    const double k = path.segment_curvature(i);
    if (std::fabs(k) < 1e-15) {
      q.position = q.position + Point2{std::cos(q.heading), std::sin(q.heading)} * m;
    } else {
      const double psi1 = q.heading + k * m;
      q.position.x += (std::sin(psi1) - std::sin(q.heading)) / k;
      q.position.y += (std::cos(q.heading) - std::cos(psi1)) / k;
      q.heading = psi1;
    }
    s -= m;
    if (s <= 0.0) break;
  }
  return q;
}

double dubins_curvature_at(const DubinsPath& path, double s) {
  double rem = s;
  for (int i = 0; i < 3; ++i) {
    if (rem < path.segment_lengths[i] - 1e-12) return path.segment_curvature(i);
    rem -= path.segment_lengths[i];
  }
  // past the end: curvature of the last segment with positive length
  for (int i = 2; i >= 0; --i)
    if (path.segment_lengths[i] > 1e-12) return path.segment_curvature(i);
  return 0.0;
}

PathPolyline sample_dubins(const DubinsPath& path, double spacing) {
  if (spacing <= 0.0) throw InvalidPath("spacing must be positive");
  const double total = path.length();
  std::vector<double> stations;
  for (double s = 0.0; s < total; s += spacing) stations.push_back(s);
  stations.push_back(total);
  double acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    acc += path.segment_lengths[i];
    if (acc > 0.0 && acc < total) stations.push_back(acc);
  }
  std::sort(stations.begin(), stations.end());
  stations.erase(std::unique(stations.begin(), stations.end(),
                             [](double a, double b) { return std::fabs(a - b) < 1e-9; }),
                 stations.end());

  PathPolyline out;
  for (const double s : stations) {
    out.vertices.push_back(dubins_config_at(path, s).position);
    out.labels.push_back(VertexRole::Transition);
  }
  out.rebuild_arclength();
  return out;
}

}  // namespace fieldsmooth
