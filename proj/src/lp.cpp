#include "fieldsmooth/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fieldsmooth {

void LinearProgram::validate() const {
  const int n = num_vars();
  const int m = num_rows();
  if (static_cast<int>(lower.size()) != n || static_cast<int>(upper.size()) != n)
    throw std::invalid_argument("bound vector size mismatch");
  for (int j = 0; j < n; ++j) {
    if (lower[j] > upper[j]) throw std::invalid_argument("lower bound above upper bound");
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || !std::isfinite(cost[j]))
      throw std::invalid_argument("non-finite problem data");
  }
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= m || t.col < 0 || t.col >= n)
      throw std::invalid_argument("triplet index out of range");
    if (!std::isfinite(t.value)) throw std::invalid_argument("non-finite coefficient");
  }
  for (const double h : rhs)
    if (std::isnan(h)) throw std::invalid_argument("NaN rhs");
}

namespace {

// mapping from an original variable to nonnegative simplex variables
struct VarMap {
  enum Kind { Shift, Mirror, Split } kind = Shift;
  int col_a = -1;
  int col_b = -1;       // Split only
  double offset = 0.0;  // lo (Shift) or up (Mirror)
};

struct Tableau {
  int ny = 0;  // structural columns
  int ncols = 0;
  std::vector<std::vector<double>> rows;  // each ncols wide
  std::vector<double> b;
  std::vector<int> basis;  // < ncols: column id, >= ncols: artificial
  std::vector<double> obj; // reduced-cost row

  void pivot(int p, int e) {
    std::vector<double>& pr = rows[p];
    const double piv = pr[e];
    for (double& v : pr) v /= piv;
    b[p] /= piv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == p) continue;
      const double f = rows[i][e];
      if (f == 0.0) continue;
      std::vector<double>& ri = rows[i];
      for (int j = 0; j < ncols; ++j) ri[j] -= f * pr[j];
      ri[e] = 0.0;
      b[i] -= f * b[p];
    }
    const double f = obj[e];
    if (f != 0.0) {
      for (int j = 0; j < ncols; ++j) obj[j] -= f * pr[j];
      obj[e] = 0.0;
    }
    basis[p] = e;
  }
};

constexpr double kPivTol = 1e-9;
constexpr int kMaxIterations = 200000;
constexpr int kDegenerateSwitch = 60;

// Runs simplex iterations on the current tableau. `tol` is per-column.
// Returns false on unboundedness.
bool run_simplex(Tableau& tab, const std::vector<double>& tol, int* iterations) {
  const int m = static_cast<int>(tab.rows.size());
  int degenerate_streak = 0;
  bool bland = false;
  while (true) {
    if (++*iterations > kMaxIterations) throw std::runtime_error("simplex iteration limit");

    int enter = -1;
    if (!bland) {
      double best = 0.0;
      for (int j = 0; j < tab.ncols; ++j) {
        const double r = tab.obj[j];
        if (r < -tol[j] && r < best) {
          best = r;
          enter = j;
        }
      }
    } else {
      for (int j = 0; j < tab.ncols; ++j) {
        if (tab.obj[j] < -tol[j]) {
          enter = j;
          break;
        }
      }
    }
    if (enter < 0) return true;  // optimal

    int leave = -1;
    double best_ratio = kInf;
    for (int i = 0; i < m; ++i) {
      const double a = tab.rows[i][enter];
      if (a > kPivTol) {
        const double ratio = tab.b[i] / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (leave < 0 || tab.basis[i] < tab.basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded direction

    if (best_ratio < 1e-12) {
      if (++degenerate_streak >= kDegenerateSwitch) bland = true;  // anti-cycling
    } else {
      degenerate_streak = 0;
    }
    tab.pivot(leave, enter);
  }
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  lp.validate();
  const int n = lp.num_vars();
  const int m0 = lp.num_rows();

  // transform to nonnegative variables
  std::vector<VarMap> vmap(n);
  int ny = 0;
  int extra_rows = 0;
  for (int j = 0; j < n; ++j) {
    VarMap& vm = vmap[j];
    if (std::isfinite(lp.lower[j])) {
      vm.kind = VarMap::Shift;
      vm.offset = lp.lower[j];
      vm.col_a = ny++;
      if (std::isfinite(lp.upper[j])) ++extra_rows;
    } else if (std::isfinite(lp.upper[j])) {
      vm.kind = VarMap::Mirror;
      vm.offset = lp.upper[j];
      vm.col_a = ny++;
    } else {
      vm.kind = VarMap::Split;
      vm.col_a = ny++;
      vm.col_b = ny++;
    }
  }

  const int m = m0 + extra_rows;
  Tableau tab;
  tab.ny = ny;
  tab.ncols = ny + m;
  tab.rows.assign(m, std::vector<double>(tab.ncols, 0.0));
  tab.b.assign(m, 0.0);
  tab.basis.assign(m, -1);

  for (int i = 0; i < m0; ++i) tab.b[i] = lp.rhs[i];
  for (const auto& t : lp.entries) {
    const VarMap& vm = vmap[t.col];
    switch (vm.kind) {
      case VarMap::Shift:
        tab.rows[t.row][vm.col_a] += t.value;
        tab.b[t.row] -= t.value * vm.offset;
        break;
      case VarMap::Mirror:
        tab.rows[t.row][vm.col_a] -= t.value;
        tab.b[t.row] -= t.value * vm.offset;
        break;
      case VarMap::Split:
        tab.rows[t.row][vm.col_a] += t.value;
        tab.rows[t.row][vm.col_b] -= t.value;
        break;
    }
  }
  {
    int r = m0;
    for (int j = 0; j < n; ++j) {
      const VarMap& vm = vmap[j];
      if (vm.kind == VarMap::Shift && std::isfinite(lp.upper[j])) {
        tab.rows[r][vm.col_a] = 1.0;
        tab.b[r] = lp.upper[j] - lp.lower[j];
        ++r;
      }
    }
  }

  // structural costs in transformed space
  std::vector<double> cy(tab.ncols, 0.0);
  for (int j = 0; j < n; ++j) {
    const VarMap& vm = vmap[j];
    switch (vm.kind) {
      case VarMap::Shift: cy[vm.col_a] += lp.cost[j]; break;
      case VarMap::Mirror: cy[vm.col_a] -= lp.cost[j]; break;
      case VarMap::Split:
        cy[vm.col_a] += lp.cost[j];
        cy[vm.col_b] -= lp.cost[j];
        break;
    }
  }

  // slack columns; rows with negative rhs get an artificial basis
  std::vector<int> art_rows;
  for (int i = 0; i < m; ++i) {
    if (tab.b[i] < 0.0) {
      for (double& v : tab.rows[i]) v = -v;
      tab.b[i] = -tab.b[i];
      tab.rows[i][ny + i] = -1.0;
      tab.basis[i] = tab.ncols + static_cast<int>(art_rows.size());
      art_rows.push_back(i);
    } else {
      tab.rows[i][ny + i] = 1.0;
      tab.basis[i] = ny + i;
    }
  }

  LpSolution sol;
  sol.iterations = 0;

  if (!art_rows.empty()) {
    // phase 1: minimise the sum of artificial values
    tab.obj.assign(tab.ncols, 0.0);
    double infeas = 0.0;
    for (const int i : art_rows) {
      for (int j = 0; j < tab.ncols; ++j) tab.obj[j] -= tab.rows[i][j];
      infeas += tab.b[i];
    }
    std::vector<double> tol1(tab.ncols, 1e-9);
    run_simplex(tab, tol1, &sol.iterations);

    double resid = 0.0;
    for (int i = 0; i < m; ++i)
      if (tab.basis[i] >= tab.ncols) resid += tab.b[i];
    if (resid > 1e-7 * (1.0 + infeas)) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // drive remaining zero-valued artificials out of the basis
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < tab.ncols) continue;
      int e = -1;
      for (int j = 0; j < tab.ncols; ++j) {
        if (std::fabs(tab.rows[i][j]) > kPivTol) {
          e = j;
          break;
        }
      }
      if (e >= 0) {
        tab.pivot(i, e);
      } else {
        // redundant row: neutralise it, keep the artificial as a dead marker
        std::fill(tab.rows[i].begin(), tab.rows[i].end(), 0.0);
        tab.b[i] = 0.0;
      }
    }
  }

  // phase 2
  tab.obj = cy;
  for (int i = 0; i < m; ++i) {
    const int bj = tab.basis[i];
    if (bj < tab.ncols && cy[bj] != 0.0) {
      const double f = cy[bj];
      for (int j = 0; j < tab.ncols; ++j) tab.obj[j] -= f * tab.rows[i][j];
      tab.obj[bj] = 0.0;
    }
  }
  std::vector<double> tol2(tab.ncols);
  for (int j = 0; j < tab.ncols; ++j) tol2[j] = 1e-9 * (1.0 + std::fabs(cy[j]));
  if (!run_simplex(tab, tol2, &sol.iterations)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  // recover x
  std::vector<double> y(tab.ncols, 0.0);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < tab.ncols) y[tab.basis[i]] = tab.b[i];
  sol.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const VarMap& vm = vmap[j];
    switch (vm.kind) {
      case VarMap::Shift: sol.x[j] = vm.offset + y[vm.col_a]; break;
      case VarMap::Mirror: sol.x[j] = vm.offset - y[vm.col_a]; break;
      case VarMap::Split: sol.x[j] = y[vm.col_a] - y[vm.col_b]; break;
    }
    sol.x[j] = std::clamp(sol.x[j], lp.lower[j], lp.upper[j]);
  }
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += lp.cost[j] * sol.x[j];
  sol.status = LpStatus::Optimal;
  return sol;
}

void dump_lp(const LinearProgram& lp, std::ostream& os) {
  os << "minimize\n ";
  for (int j = 0; j < lp.num_vars(); ++j) os << " " << lp.cost[j] << "*x" << j;
  os << "\nsubject to (G x <= h)\n";
  std::vector<std::vector<std::pair<int, double>>> by_row(lp.num_rows());
  for (const auto& t : lp.entries) by_row[t.row].push_back({t.col, t.value});
  for (int i = 0; i < lp.num_rows(); ++i) {
    os << " ";
    for (const auto& [c, v] : by_row[i]) os << " " << v << "*x" << c;
    os << " <= " << lp.rhs[i] << "\n";
  }
  os << "bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j)
    os << "  " << lp.lower[j] << " <= x" << j << " <= " << lp.upper[j] << "\n";
}

}  // namespace fieldsmooth
