#include "toric/lp.hpp"

#include <cstddef>

namespace toric {

namespace {

// Dense simplex tableau over Q. Row m is the objective row, kept so that
// the current objective value is -t[m][n]. Bland's rule (smallest eligible
// index everywhere) guarantees termination.
struct Tableau {
  std::size_t m, n;                // constraints, total variables
  std::vector<RatVec> t;           // (m+1) x (n+1), last col = rhs
  std::vector<std::size_t> basis;  // basic variable per row

  Tableau(std::size_t m_, std::size_t n_)
      : m(m_), n(n_), t(m_ + 1, RatVec(n_ + 1, Rat(0))), basis(m_, 0) {}

  void pivot(std::size_t pr, std::size_t pc) {
    Rat pv = t[pr][pc];
    for (Rat& x : t[pr]) x /= pv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == pr || t[i][pc] == 0) continue;
      Rat f = t[i][pc];
      for (std::size_t j = 0; j <= n; ++j) t[i][j] -= f * t[pr][j];
    }
    basis[pr] = pc;
  }

  // Only columns < limit may enter. Returns false when unbounded.
  bool run(std::size_t limit) {
    for (;;) {
      std::size_t pc = n;
      for (std::size_t j = 0; j < limit; ++j)
        if (t[m][j] > 0) {
          pc = j;
          break;
        }
      if (pc == n) return true;
      std::size_t pr = m;
      Rat best = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][pc] <= 0) continue;
        Rat ratio = t[i][n] / t[i][pc];
        if (pr == m || ratio < best ||
            (ratio == best && basis[i] < basis[pr])) {
          pr = i;
          best = ratio;
        }
      }
      if (pr == m) return false;
      pivot(pr, pc);
    }
  }
};

}  // namespace

LpResult lp_maximize(const std::vector<RatVec>& a, const RatVec& b,
                     const RatVec& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  for (const RatVec& row : a)
    if (row.size() != n) throw error("LP constraint width mismatch");
  if (b.size() != m) throw error("LP rhs size mismatch");
  if (n == 0) {
    for (const Rat& v : b)
      if (v != 0) return {LpStatus::Infeasible, 0, {}};
    return {LpStatus::Optimal, 0, {}};
  }

  // Phase 1: artificial basis, maximize -(sum of artificials).
  Tableau tb(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    Rat s = (b[i] >= 0) ? Rat(1) : Rat(-1);
    for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = s * a[i][j];
    tb.t[i][n + i] = 1;
    tb.t[i][n + m] = s * b[i];
    tb.basis[i] = n + i;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tb.t[m][j] += tb.t[i][j];
    tb.t[m][n + m] += tb.t[i][n + m];
  }
  if (!tb.run(n + m)) throw error("phase-1 simplex unbounded");
  if (tb.t[m][n + m] != 0) return {LpStatus::Infeasible, 0, {}};

  // Drive artificials out of the basis where possible. A row that cannot
  // pivot is redundant (all-zero on original columns) and stays inert.
  for (std::size_t i = 0; i < m; ++i) {
    if (tb.basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (tb.t[i][j] != 0) {
        tb.pivot(i, j);
        break;
      }
  }

  // Phase 2 objective, eliminated over the current basis.
  for (std::size_t j = 0; j <= n + m; ++j) tb.t[m][j] = 0;
  for (std::size_t j = 0; j < n; ++j) tb.t[m][j] = c[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (tb.basis[i] >= n) continue;
    Rat f = tb.t[m][tb.basis[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j <= n + m; ++j) tb.t[m][j] -= f * tb.t[i][j];
  }

  if (!tb.run(n)) return {LpStatus::Unbounded, 0, {}};

  LpResult r;
  r.status = LpStatus::Optimal;
  r.value = -tb.t[m][n + m];
  r.solution.assign(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (tb.basis[i] < n) r.solution[tb.basis[i]] = tb.t[i][n + m];
  return r;
}

bool lp_feasible(const std::vector<RatVec>& a, const RatVec& b) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  RatVec c(n, Rat(0));
  LpResult r = lp_maximize(a, b, c);
  return r.status == LpStatus::Optimal;
}

}  // namespace toric
