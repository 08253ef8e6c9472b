#include "toric/matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace toric {

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw error("ragged initializer for IntMat");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows) {
  IntMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw error("ragged rows for IntMat");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVec IntMat::row(std::size_t i) const {
  IntVec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

IntVec IntMat::col(std::size_t j) const {
  IntVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMat IntMat::transpose() const {
  IntMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols_ != o.rows_) throw error("matrix product shape mismatch");
  IntMat p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
    }
  return p;
}

IntVec IntMat::operator*(const IntVec& v) const {
  if (cols_ != v.size()) throw error("matrix-vector shape mismatch");
  IntVec r(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

void IntMat::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j)
    std::swap((*this)(a, j), (*this)(b, j));
}

void IntMat::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i)
    std::swap((*this)(i, a), (*this)(i, b));
}

namespace {

// Row op: row[dst] += c * row[src], mirrored into U.
void add_row(IntMat& s, IntMat& u, std::size_t dst, std::size_t src,
             const Int& c) {
  for (std::size_t j = 0; j < s.cols(); ++j) s(dst, j) += c * s(src, j);
  for (std::size_t j = 0; j < u.cols(); ++j) u(dst, j) += c * u(src, j);
}

void add_col(IntMat& s, IntMat& v, std::size_t dst, std::size_t src,
             const Int& c) {
  for (std::size_t i = 0; i < s.rows(); ++i) s(i, dst) += c * s(i, src);
  for (std::size_t i = 0; i < v.rows(); ++i) v(i, dst) += c * v(i, src);
}

// Finds the entry of minimal nonzero absolute value in the trailing block
// starting at (k, k). Returns false when the block is zero.
bool find_pivot(const IntMat& s, std::size_t k, std::size_t& pi,
                std::size_t& pj) {
  bool found = false;
  Int best = 0;
  for (std::size_t i = k; i < s.rows(); ++i)
    for (std::size_t j = k; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      Int a = abs(s(i, j));
      if (!found || a < best) {
        best = a;
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace

SmithResult smith_normal_form(const IntMat& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithResult r{IntMat::identity(m), a, IntMat::identity(n)};
  IntMat& s = r.S;
  IntMat& u = r.U;
  IntMat& v = r.V;

  std::size_t k = 0;
  const std::size_t lim = std::min(m, n);
  while (k < lim) {
    std::size_t pi = k, pj = k;
    if (!find_pivot(s, k, pi, pj)) break;
    s.swap_rows(k, pi);
    u.swap_rows(k, pi);
    s.swap_cols(k, pj);
    v.swap_cols(k, pj);

    bool clean = true;
    for (std::size_t i = k + 1; i < m; ++i) {
      if (s(i, k) == 0) continue;
      Int q = s(i, k) / s(k, k);
      add_row(s, u, i, k, -q);
      if (s(i, k) != 0) clean = false;  // remainder left, re-pivot
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (s(k, j) == 0) continue;
      Int q = s(k, j) / s(k, k);
      add_col(s, v, j, k, -q);
      if (s(k, j) != 0) clean = false;
    }
    if (!clean) continue;  // smaller pivot now exists in the block

    // Pivot divides the rest of the block, or we fold a bad entry in.
    bool divides = true;
    for (std::size_t i = k + 1; i < m && divides; ++i)
      for (std::size_t j = k + 1; j < n && divides; ++j)
        if (s(i, j) % s(k, k) != 0) {
          add_row(s, u, k, i, 1);
          divides = false;
        }
    if (!divides) continue;

    if (s(k, k) < 0) {
      for (std::size_t j = 0; j < n; ++j) s(k, j) = -s(k, j);
      for (std::size_t j = 0; j < m; ++j) u(k, j) = -u(k, j);
    }
    ++k;
  }
  return r;
}

std::size_t rank(const IntMat& a) {
  // Fraction-free Gaussian elimination.
  IntMat w = a;
  std::size_t r = 0;
  const std::size_t m = w.rows(), n = w.cols();
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && w(p, c) == 0) ++p;
    if (p == m) continue;
    w.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m; ++i) {
      if (w(i, c) == 0) continue;
      Int g = int_gcd(w(r, c), w(i, c));
      Int fr = w(i, c) / g, fi = w(r, c) / g;
      for (std::size_t j = c; j < n; ++j)
        w(i, j) = fi * w(i, j) - fr * w(r, j);
    }
    ++r;
  }
  return r;
}

Int determinant(const IntMat& a) {
  if (a.rows() != a.cols()) throw error("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss.
  IntMat w = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && w(p, k) == 0) ++p;
      if (p == n) return 0;
      w.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
    prev = w(k, k);
  }
  return sign > 0 ? w(n - 1, n - 1) : Int(-w(n - 1, n - 1));
}

std::vector<IntVec> integer_kernel(const IntMat& a) {
  // Column-style Hermite reduction tracking only the column transform, so
  // tall matrices stay cheap.
  const std::size_t m = a.rows(), n = a.cols();
  IntMat w = a;
  IntMat v = IntMat::identity(n);
  std::size_t r = 0;  // next pivot column
  for (std::size_t i = 0; i < m && r < n; ++i) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = r; j < n; ++j) {
        if (w(i, j) == 0) continue;
        if (best == n || abs(w(i, j)) < abs(w(i, best))) best = j;
      }
      if (best == n) break;  // row is zero on the free columns
      bool others = false;
      for (std::size_t j = r; j < n; ++j) {
        if (j == best || w(i, j) == 0) continue;
        others = true;
        Int q = w(i, j) / w(i, best);
        for (std::size_t k = 0; k < m; ++k) w(k, j) -= q * w(k, best);
        for (std::size_t k = 0; k < n; ++k) v(k, j) -= q * v(k, best);
      }
      if (!others) {
        w.swap_cols(r, best);
        v.swap_cols(r, best);
        ++r;
        break;
      }
    }
  }
  std::vector<IntVec> basis;
  for (std::size_t j = r; j < n; ++j) basis.push_back(v.col(j));
  return basis;
}

bool solve_integer_matrix(const IntMat& a, const IntMat& b, IntMat& x) {
  SmithResult sr = smith_normal_form(a);
  const std::size_t lim = std::min(a.rows(), a.cols());
  IntMat ub = sr.U * b;
  IntMat y(a.cols(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Int d = (i < lim) ? sr.S(i, i) : Int(0);
      if (d == 0) {
        if (ub(i, c) != 0) return false;
      } else {
        if (ub(i, c) % d != 0) return false;
        if (i < a.cols()) y(i, c) = ub(i, c) / d;
      }
    }
  x = sr.V * y;
  return true;
}

bool solve_integer(const IntMat& a, const IntVec& b, IntVec& x) {
  SmithResult sr = smith_normal_form(a);
  IntVec ub = sr.U * b;
  const std::size_t lim = std::min(a.rows(), a.cols());
  IntVec y(a.cols(), Int(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int d = (i < lim) ? sr.S(i, i) : Int(0);
    if (d == 0) {
      if (ub[i] != 0) return false;
    } else {
      if (ub[i] % d != 0) return false;
      if (i < a.cols()) y[i] = ub[i] / d;
    }
  }
  x = sr.V * y;
  return true;
}

bool solve_rational(const IntMat& a, const RatVec& b, RatVec& x) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<RatVec> w(m, RatVec(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = Rat(a(i, j));
    w[i][n] = b[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && w[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(w[r], w[p]);
    Rat inv = w[r][c];
    for (std::size_t j = c; j <= n; ++j) w[r][j] /= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || w[i][c] == 0) continue;
      Rat f = w[i][c];
      for (std::size_t j = c; j <= n; ++j) w[i][j] -= f * w[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (w[i][n] != 0) return false;
  x.assign(n, Rat(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = w[i][n];
  return true;
}

IntMat unimodular_inverse(const IntMat& u) {
  const std::size_t n = u.rows();
  if (u.cols() != n) throw error("inverse of non-square matrix");
  IntMat inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    RatVec b(n, Rat(0)), x;
    b[c] = 1;
    if (!solve_rational(u, b, x)) throw error("matrix not invertible");
    for (std::size_t i = 0; i < n; ++i) {
      if (denominator(x[i]) != 1) throw error("matrix not unimodular");
      inv(i, c) = numerator(x[i]);
    }
  }
  return inv;
}

std::vector<IntVec> saturated_row_basis(const IntMat& a) {
  SmithResult sr = smith_normal_form(a);
  std::size_t rk = 0;
  const std::size_t lim = std::min(a.rows(), a.cols());
  while (rk < lim && sr.S(rk, rk) != 0) ++rk;
  // rowspan(A) = rowspan(S V^-1); the first rk rows of V^-1 are a basis of
  // the saturation since V is unimodular.
  IntMat vinv = unimodular_inverse(sr.V);
  std::vector<IntVec> basis;
  for (std::size_t i = 0; i < rk; ++i) basis.push_back(vinv.row(i));
  return basis;
}

}  // namespace toric
