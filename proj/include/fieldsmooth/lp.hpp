#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

namespace fieldsmooth {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Inequality-constrained LP: min c'x  s.t.  G x <= h,  lo <= x <= up.
struct LinearProgram {
  struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
  };

  std::vector<double> cost;        // n
  std::vector<Triplet> entries;    // sparse G
  std::vector<double> rhs;         // h, m rows
  std::vector<double> lower;       // n, -inf allowed
  std::vector<double> upper;       // n, +inf allowed

  int num_vars() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  void resize(int n) {
    cost.assign(n, 0.0);
    lower.assign(n, -kInf);
    upper.assign(n, kInf);
  }
  int add_row(double h) {
    rhs.push_back(h);
    return num_rows() - 1;
  }
  void set_entry(int row, int col, double value) { entries.push_back({row, col, value}); }
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

/// Deterministic two-phase simplex with anti-cycling fallback to Bland's rule.
LpSolution solve(const LinearProgram& lp);

/// Plain-text dump of the standard form for external cross-checking.
void dump_lp(const LinearProgram& lp, std::ostream& os);

}  // namespace fieldsmooth
