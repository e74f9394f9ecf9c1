#include <doctest.h>

#include <cmath>
#include <random>

#include "fieldsmooth/dubins.hpp"

using namespace fieldsmooth;

namespace {

const DubinsWord kAllWords[] = {DubinsWord::LSL, DubinsWord::RSR, DubinsWord::LSR,
                                DubinsWord::RSL, DubinsWord::RLR, DubinsWord::LRL};

double endpoint_error(const DubinsPath& path, const Config& goal) {
  const Config end = dubins_config_at(path, path.length());
  const double dpos = distance(end.position, goal.position);
  const double dpsi = std::fabs(wrap_angle(end.heading - goal.heading));
  return std::max(dpos, dpsi);
}

}  // namespace

TEST_CASE("collinear aligned configurations give a straight path") {
  const Config q0{{0, 0}, 0.0};
  const Config q1{{10, 0}, 0.0};
  for (const double R : {1.0, 3.0, 5.0}) {
    const DubinsPath path = shortest_dubins(q0, q1, R);
    CHECK(path.length() == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(endpoint_error(path, q1) < 1e-9);
  }
}

TEST_CASE("U-turn of diameter 2R is a single half circle") {
  const Config q0{{0, 0}, 0.0};
  const Config q1{{0, 10}, M_PI};
  const DubinsPath path = shortest_dubins(q0, q1, 5.0);
  CHECK(path.length() == doctest::Approx(5.0 * M_PI).epsilon(1e-9));
  CHECK(endpoint_error(path, q1) < 1e-9);
}

TEST_CASE("random instances: endpoint exactness and optimality among words") {
  std::mt19937 rng(314159);
  std::uniform_real_distribution<double> upos(-30.0, 30.0);
  std::uniform_real_distribution<double> uang(-M_PI, M_PI);
  std::uniform_real_distribution<double> urad(0.5, 8.0);
  for (int it = 0; it < 300; ++it) {
    const Config q0{{upos(rng), upos(rng)}, uang(rng)};
    const Config q1{{upos(rng), upos(rng)}, uang(rng)};
    const double R = urad(rng);
    const DubinsPath path = shortest_dubins(q0, q1, R);
    CHECK(endpoint_error(path, q1) <= 1e-9);
    CHECK(path.length() >= distance(q0.position, q1.position) - 1e-9);
    for (const DubinsWord w : kAllWords) {
      const double lw = dubins_word_length(q0, q1, R, w);
      if (std::isfinite(lw)) CHECK(path.length() <= lw + 1e-9);
    }
  }
}

TEST_CASE("reversal symmetry: swapping endpoints with flipped headings keeps the length") {
  std::mt19937 rng(271828);
  std::uniform_real_distribution<double> upos(-20.0, 20.0);
  std::uniform_real_distribution<double> uang(-M_PI, M_PI);
  for (int it = 0; it < 100; ++it) {
    const Config q0{{upos(rng), upos(rng)}, uang(rng)};
    const Config q1{{upos(rng), upos(rng)}, uang(rng)};
    const double R = 4.0;
    const Config r0{q1.position, wrap_angle(q1.heading + M_PI)};
    const Config r1{q0.position, wrap_angle(q0.heading + M_PI)};
    const double a = shortest_dubins(q0, q1, R).length();
    const double b = shortest_dubins(r0, r1, R).length();
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("sample_dubins on a straight word") {
  const DubinsPath path = shortest_dubins({{0, 0}, 0.0}, {{10, 0}, 0.0}, 3.0);
  const PathPolyline pts = sample_dubins(path, 1.0);
  CHECK(pts.size() == 11);
  for (const Point2& p : pts.vertices) CHECK(std::fabs(p.y) < 1e-9);
  CHECK(pts.length() == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("sample_dubins arc points lie on the turning circle") {
  const Config q0{{0, 0}, 0.0};
  const Config q1{{0, 10}, M_PI};
  const DubinsPath path = shortest_dubins(q0, q1, 5.0);
  const PathPolyline pts = sample_dubins(path, 0.1);
  const Point2 center{0.0, 5.0};  // left turn from the origin heading +x
  for (const Point2& p : pts.vertices)
    CHECK(distance(p, center) == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("sampled curvature magnitudes are 0 or 1/R") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> upos(-20.0, 20.0);
  std::uniform_real_distribution<double> uang(-M_PI, M_PI);
  for (int it = 0; it < 50; ++it) {
    const Config q0{{upos(rng), upos(rng)}, uang(rng)};
    const Config q1{{upos(rng), upos(rng)}, uang(rng)};
    const double R = 5.0;
    const DubinsPath path = shortest_dubins(q0, q1, R);
    for (double s = 0.0; s < path.length(); s += 0.37) {
      const double k = std::fabs(dubins_curvature_at(path, s));
      const bool valid = k < 1e-12 || std::fabs(k - 1.0 / R) < 1e-12;
      CHECK(valid);
    }
  }
}
