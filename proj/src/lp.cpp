#include "boundariness/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "boundariness/errors.hpp"

namespace boundariness::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kCostTol = 1e-10;
constexpr std::size_t kMaxIterations = 50000;

struct Tableau {
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<std::size_t> basis;
  std::size_t ncols = 0;
  std::size_t iterations = 0;

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / rows[r][c];
    for (double& v : rows[r]) v *= inv;
    rhs[r] *= inv;
    rows[r][c] = 1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const double f = rows[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
      rhs[i] -= f * rhs[r];
      rows[i][c] = 0.0;
    }
    basis[r] = c;
    ++iterations;
  }

  // Minimizes cost over columns [0, allowed_end). Returns false if unbounded.
  bool optimize(const std::vector<double>& cost, std::size_t allowed_end) {
    std::vector<double> reduced(ncols);
    for (;;) {
      if (iterations > kMaxIterations)
        throw NumericalError("simplex: iteration cap of " + std::to_string(kMaxIterations) + " reached");
      for (std::size_t j = 0; j < ncols; ++j) {
        double r = cost[j];
        for (std::size_t i = 0; i < rows.size(); ++i) r -= cost[basis[i]] * rows[i][j];
        reduced[j] = r;
      }
      std::size_t enter = ncols;
      for (std::size_t j = 0; j < allowed_end; ++j)
        if (reduced[j] < -kCostTol) {
          enter = j;
          break;
        }
      if (enter == ncols) return true;

      std::size_t leave = rows.size();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const double a = rows[i][enter];
        if (a <= kPivotTol) continue;
        const double ratio = std::max(0.0, rhs[i]) / a;
        if (leave == rows.size()) {
          best = ratio;
          leave = i;
          continue;
        }
        // Ties within the slack go to the lowest basic variable index (Bland).
        const double slack = 1e-12 * (1.0 + best);
        if (ratio < best - slack || (ratio <= best + slack && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Solution solve(const Problem& problem) {
  const std::size_t n = problem.objective.size();
  const std::size_t m = problem.a_eq.size();
  if (problem.b_eq.size() != m) throw InputError("lp: b_eq length differs from number of constraint rows");
  if (!problem.nonneg.empty() && problem.nonneg.size() != n)
    throw InputError("lp: nonneg flags length differs from number of variables");
  for (const auto& row : problem.a_eq) {
    if (row.size() != n) throw InputError("lp: constraint row length differs from number of variables");
    for (double v : row)
      if (!std::isfinite(v)) throw InputError("lp: non-finite constraint coefficient");
  }
  for (double v : problem.objective)
    if (!std::isfinite(v)) throw InputError("lp: non-finite objective coefficient");
  for (double v : problem.b_eq)
    if (!std::isfinite(v)) throw InputError("lp: non-finite right-hand side");

  // Free variables are split as x = x+ - x-.
  std::vector<std::size_t> plus_col(n), minus_col(n, SIZE_MAX);
  std::size_t ns = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plus_col[j] = ns++;
    if (!problem.nonneg.empty() && !problem.nonneg[j]) minus_col[j] = ns++;
  }

  Tableau tab;
  tab.ncols = ns + m;
  tab.rows.assign(m, std::vector<double>(tab.ncols, 0.0));
  tab.rhs.assign(m, 0.0);
  tab.basis.resize(m);
  double bscale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = problem.b_eq[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      tab.rows[i][plus_col[j]] = sign * problem.a_eq[i][j];
      if (minus_col[j] != SIZE_MAX) tab.rows[i][minus_col[j]] = -sign * problem.a_eq[i][j];
    }
    tab.rows[i][ns + i] = 1.0;
    tab.rhs[i] = sign * problem.b_eq[i];
    tab.basis[i] = ns + i;
    bscale = std::max(bscale, std::abs(problem.b_eq[i]));
  }

  Solution sol;

  // Phase 1: minimize the sum of artificials.
  std::vector<double> cost1(tab.ncols, 0.0);
  for (std::size_t i = 0; i < m; ++i) cost1[ns + i] = 1.0;
  tab.optimize(cost1, tab.ncols);
  double infeasibility = 0.0;
  for (std::size_t i = 0; i < tab.rows.size(); ++i)
    if (tab.basis[i] >= ns) infeasibility += std::abs(tab.rhs[i]);
  if (infeasibility > 1e-9 * bscale) {
    sol.status = Status::infeasible;
    sol.iterations = tab.iterations;
    return sol;
  }

  // Drive remaining artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < tab.rows.size();) {
    if (tab.basis[i] < ns) {
      ++i;
      continue;
    }
    std::size_t best = ns;
    double mag = kPivotTol;
    for (std::size_t j = 0; j < ns; ++j)
      if (std::abs(tab.rows[i][j]) > mag) {
        mag = std::abs(tab.rows[i][j]);
        best = j;
      }
    if (best < ns) {
      tab.pivot(i, best);
      ++i;
    } else {
      tab.rows.erase(tab.rows.begin() + static_cast<std::ptrdiff_t>(i));
      tab.rhs.erase(tab.rhs.begin() + static_cast<std::ptrdiff_t>(i));
      tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  // Phase 2.
  const double sense = problem.sense == Sense::maximize ? -1.0 : 1.0;
  std::vector<double> cost2(tab.ncols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost2[plus_col[j]] = sense * problem.objective[j];
    if (minus_col[j] != SIZE_MAX) cost2[minus_col[j]] = -sense * problem.objective[j];
  }
  if (!tab.optimize(cost2, ns)) {
    sol.status = Status::unbounded;
    sol.iterations = tab.iterations;
    return sol;
  }

  std::vector<double> col_value(tab.ncols, 0.0);
  for (std::size_t i = 0; i < tab.rows.size(); ++i) col_value[tab.basis[i]] = std::max(0.0, tab.rhs[i]);
  sol.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    sol.x[j] = col_value[plus_col[j]];
    if (minus_col[j] != SIZE_MAX) sol.x[j] -= col_value[minus_col[j]];
  }
  sol.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.value += problem.objective[j] * sol.x[j];
  for (std::size_t i = 0; i < m; ++i) {
    double r = -problem.b_eq[i];
    for (std::size_t j = 0; j < n; ++j) r += problem.a_eq[i][j] * sol.x[j];
    sol.residual = std::max(sol.residual, std::abs(r));
  }
  sol.status = Status::optimal;
  sol.iterations = tab.iterations;
  return sol;
}

}  // namespace boundariness::lp
