#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mjtoric/errors.hpp"
#include "mjtoric/numeric.hpp"

namespace mjtoric {

/**
 * Dense integer matrix over arbitrary-precision integers, row-major.
 * Intermediate swell in the normal forms and minors below is unbounded,
 * so fixed-width entries are never used.
 */
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

  Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<Vec>& rows_in) {
    if (rows_in.empty()) return IntMatrix();
    IntMatrix m(rows_in.size(), rows_in[0].size());
    for (std::size_t i = 0; i < rows_in.size(); ++i) {
      if (rows_in[i].size() != m.cols)
        throw invalid_input("ragged row list in matrix construction");
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows_in[i][j];
    }
    return m;
  }

  Vec row(std::size_t i) const {
    Vec r(cols);
    for (std::size_t j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline IntMatrix mul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw invalid_input("matrix product shape mismatch");
  IntMatrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

inline Vec mat_vec(const IntMatrix& m, const Vec& v) {
  if (m.cols != v.size()) throw invalid_input("matrix-vector shape mismatch");
  Vec r(m.rows, Int(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
  return r;
}

struct HnfResult {
  IntMatrix h;  // row Hermite normal form of the input
  IntMatrix t;  // unimodular, t * input = h
};

/**
 * Row Hermite normal form with transformation: H = T*A, |det T| = 1.
 * H is in row-echelon shape, pivots positive, entries above each pivot
 * reduced into [0, pivot).
 */
inline HnfResult hnf(const IntMatrix& input) {
  if (input.rows == 0 || input.cols == 0)
    throw invalid_input("hnf of an empty matrix");
  IntMatrix h = input;
  IntMatrix t = IntMatrix::identity(input.rows);

  auto swap_rows = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < h.cols; ++j) std::swap(h.at(x, j), h.at(y, j));
    for (std::size_t j = 0; j < t.cols; ++j) std::swap(t.at(x, j), t.at(y, j));
  };
  auto add_multiple = [&](std::size_t dst, std::size_t src, const Int& q) {
    // row dst -= q * row src
    if (q == 0) return;
    for (std::size_t j = 0; j < h.cols; ++j) h.at(dst, j) -= q * h.at(src, j);
    for (std::size_t j = 0; j < t.cols; ++j) t.at(dst, j) -= q * t.at(src, j);
  };
  auto negate_row = [&](std::size_t x) {
    for (std::size_t j = 0; j < h.cols; ++j) h.at(x, j) = -h.at(x, j);
    for (std::size_t j = 0; j < t.cols; ++j) t.at(x, j) = -t.at(x, j);
  };

  std::size_t pr = 0;
  for (std::size_t col = 0; col < h.cols && pr < h.rows; ++col) {
    // Euclidean elimination below the pivot row.
    while (true) {
      std::size_t best = h.rows;
      for (std::size_t i = pr; i < h.rows; ++i) {
        if (h.at(i, col) == 0) continue;
        if (best == h.rows || mpz_cmpabs(h.at(i, col).get_mpz_t(),
                                         h.at(best, col).get_mpz_t()) < 0)
          best = i;
      }
      if (best == h.rows) break;  // column zero from pr down
      swap_rows(pr, best);
      bool clean = true;
      for (std::size_t i = pr + 1; i < h.rows; ++i) {
        if (h.at(i, col) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(pr, col).get_mpz_t());
        add_multiple(i, pr, q);
        if (h.at(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(pr, col) == 0) continue;
    if (h.at(pr, col) < 0) negate_row(pr);
    for (std::size_t i = 0; i < pr; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(pr, col).get_mpz_t());
      add_multiple(i, pr, q);
    }
    ++pr;
  }
  return {std::move(h), std::move(t)};
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(IntMatrix m) {
  if (m.rows != m.cols) throw invalid_input("determinant of a non-square matrix");
  const std::size_t n = m.rows;
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t p = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  Int d = m.at(n - 1, n - 1);
  return (sign < 0) ? Int(-d) : d;
}

/// Rank over the rationals (count of HNF pivot rows).
inline std::size_t rank(const IntMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  IntMatrix h = hnf(m).h;
  std::size_t r = 0;
  for (std::size_t i = 0; i < h.rows; ++i) {
    bool nonzero = false;
    for (std::size_t j = 0; j < h.cols; ++j)
      if (h.at(i, j) != 0) {
        nonzero = true;
        break;
      }
    if (nonzero) ++r;
  }
  return r;
}

inline std::size_t rank_of_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  return rank(IntMatrix::from_rows(rows));
}

/**
 * Exact minor: determinant of the submatrix selected by (rowset, colset),
 * in the given order. Empty selections give 1.
 */
inline Int minor_det(const IntMatrix& m, const std::vector<std::size_t>& rowset,
                     const std::vector<std::size_t>& colset) {
  if (rowset.size() != colset.size())
    throw index_out_of_range("minor: row and column selections differ in size");
  for (std::size_t i : rowset)
    if (i >= m.rows) throw index_out_of_range("minor: row index out of range");
  for (std::size_t j : colset)
    if (j >= m.cols) throw index_out_of_range("minor: column index out of range");
  IntMatrix s(rowset.size(), colset.size());
  for (std::size_t i = 0; i < rowset.size(); ++i)
    for (std::size_t j = 0; j < colset.size(); ++j)
      s.at(i, j) = m.at(rowset[i], colset[j]);
  return det(std::move(s));
}

/**
 * Lattice basis of {u : A*u = 0}, canonicalized by a final HNF pass so the
 * basis is reproducible. Empty when the kernel is trivial.
 */
inline std::vector<Vec> integer_kernel(const IntMatrix& a) {
  const std::size_t r = a.cols;
  if (r == 0) return {};
  // HNF of [A^T | I]; rows whose A^T-part vanishes carry the kernel basis.
  IntMatrix m(r, a.rows + r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < a.rows; ++j) m.at(i, j) = a.at(j, i);
    m.at(i, a.rows + i) = 1;
  }
  IntMatrix h = hnf(m).h;
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < r; ++i) {
    bool zero_image = true;
    for (std::size_t j = 0; j < a.rows; ++j)
      if (h.at(i, j) != 0) {
        zero_image = false;
        break;
      }
    if (!zero_image) continue;
    Vec v(r);
    for (std::size_t j = 0; j < r; ++j) v[j] = h.at(i, a.rows + j);
    if (!is_zero_vec(v)) basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  IntMatrix canon = hnf(IntMatrix::from_rows(basis)).h;
  std::vector<Vec> out;
  for (std::size_t i = 0; i < canon.rows; ++i) {
    Vec v = canon.row(i);
    if (!is_zero_vec(v)) out.push_back(std::move(v));
  }
  return out;
}

/**
 * Solves x * B = target for a row-echelon integer basis B with positive
 * pivots, requiring an exact integer solution (target in the row lattice).
 */
inline Vec solve_in_row_basis(const std::vector<Vec>& basis_rows, const Vec& target) {
  const std::size_t d = basis_rows.size();
  std::vector<std::size_t> pivot(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t p = 0;
    while (p < basis_rows[i].size() && basis_rows[i][p] == 0) ++p;
    if (p == basis_rows[i].size())
      throw invalid_input("zero row in lattice basis");
    pivot[i] = p;
  }
  Vec x(d, Int(0));
  for (std::size_t i = 0; i < d; ++i) {
    Int rem = target[pivot[i]];
    for (std::size_t k = 0; k < i; ++k) rem -= x[k] * basis_rows[k][pivot[i]];
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.get_mpz_t(),
                basis_rows[i][pivot[i]].get_mpz_t());
    if (r != 0)
      throw invalid_input("vector " + vec_to_string(target) +
                          " is not in the generated lattice");
    x[i] = q;
  }
  Vec check(target.size(), Int(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < target.size(); ++j) check[j] += x[i] * basis_rows[i][j];
  if (check != target)
    throw invalid_input("vector " + vec_to_string(target) +
                        " is not in the generated lattice");
  return x;
}

}  // namespace mjtoric
