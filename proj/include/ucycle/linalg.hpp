#pragma once

// Dense vectors and small matrices over a Field, stored as element codes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ucycle/gf.hpp"

namespace ucycle {

using Vec = std::vector<Code>;

class DimensionMismatch : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace vec {

inline void check_same(Vec const& a, Vec const& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector dimensions differ");
}

inline Vec add(Field const& f, Vec const& a, Vec const& b) {
  check_same(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

inline Vec sub(Field const& f, Vec const& a, Vec const& b) {
  check_same(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

inline Vec scale(Field const& f, Code c, Vec const& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
  return r;
}

inline Code dot(Field const& f, Vec const& a, Vec const& b) {
  check_same(a, b);
  Code s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

inline bool is_zero(Vec const& a) {
  for (Code c : a)
    if (c != 0) return false;
  return true;
}

/// Index of the first nonzero coordinate, or size() for the zero vector.
inline std::size_t leading_index(Vec const& a) {
  std::size_t i = 0;
  while (i < a.size() && a[i] == 0) ++i;
  return i;
}

/// Projective representative: the first nonzero coordinate scaled to 1.
inline Vec normalize(Field const& f, Vec const& a) {
  const std::size_t lead = leading_index(a);
  if (lead == a.size()) throw std::invalid_argument("cannot normalize the zero vector");
  return scale(f, f.inv(a[lead]), a);
}

/// Position of a in the lexicographic order of F_q^n (first coordinate most
/// significant).
inline std::uint64_t index_of(Field const& f, Vec const& a) {
  std::uint64_t idx = 0;
  for (Code c : a) idx = idx * f.q() + c;
  return idx;
}

inline Vec from_index(Field const& f, std::size_t n, std::uint64_t idx) {
  Vec r(n);
  for (std::size_t i = n; i-- > 0;) {
    r[i] = static_cast<Code>(idx % f.q());
    idx /= f.q();
  }
  return r;
}

/// q^n, throwing if it does not fit in 64 bits.
inline std::uint64_t space_size(Field const& f, std::size_t n) {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (s > UINT64_MAX / f.q()) throw std::overflow_error("q^n overflows 64 bits");
    s *= f.q();
  }
  return s;
}

}  // namespace vec

/// Row-major matrix acting on column vectors.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Code> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(std::vector<Vec> const& columns) {
    if (columns.empty()) return {};
    Matrix m(columns.front().size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != m.rows) throw DimensionMismatch("columns of unequal length");
      for (std::size_t i = 0; i < m.rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  Code& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Code operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  Vec apply(Field const& f, Vec const& v) const {
    if (v.size() != cols) throw DimensionMismatch("matrix/vector dimensions differ");
    Vec r(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
      Code s = 0;
      for (std::size_t j = 0; j < cols; ++j) s = f.add(s, f.mul((*this)(i, j), v[j]));
      r[i] = s;
    }
    return r;
  }

  Matrix compose(Field const& f, Matrix const& rhs) const {
    if (cols != rhs.rows) throw DimensionMismatch("matrix product dimensions differ");
    Matrix r(rows, rhs.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < rhs.cols; ++j) {
        Code s = 0;
        for (std::size_t t = 0; t < cols; ++t) s = f.add(s, f.mul((*this)(i, t), rhs(t, j)));
        r(i, j) = s;
      }
    return r;
  }

  bool operator==(Matrix const&) const = default;
};

struct EchelonForm {
  std::vector<Vec> rows;            // nonzero rows in reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form of the span of the given rows (all of length n).
inline EchelonForm rref(Field const& f, std::vector<Vec> rows) {
  EchelonForm out;
  if (rows.empty()) return out;
  const std::size_t n = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    rows[r] = vec::scale(f, f.inv(rows[r][col]), rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      rows[i] = vec::sub(f, rows[i], vec::scale(f, rows[i][col], rows[r]));
    }
    out.pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

inline std::size_t rank(Field const& f, std::vector<Vec> rows) { return rref(f, std::move(rows)).rows.size(); }

/// Coordinates of v in the given (independent) column basis, if v lies in
/// their span.
inline std::optional<Vec> solve_in_span(Field const& f, std::vector<Vec> const& basis, Vec const& v) {
  // Row reduce the augmented system [basis | v].
  const std::size_t n = v.size();
  const std::size_t k = basis.size();
  std::vector<Vec> aug(n, Vec(k + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = basis[j][i];
    aug[i][k] = v[i];
  }
  EchelonForm e = rref(f, aug);
  Vec coords(k, 0);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == k) return std::nullopt;  // inconsistent
    coords[e.pivots[r]] = e.rows[r][k];
  }
  if (e.rows.size() < k) {
    // Dependent basis: only accept if the solution is verified.
    Vec check(n, 0);
    for (std::size_t j = 0; j < k; ++j) check = vec::add(f, check, vec::scale(f, coords[j], basis[j]));
    if (check != v) return std::nullopt;
  }
  return coords;
}

/// Inverse of a square matrix, or nullopt if singular.
inline std::optional<Matrix> inverse(Field const& f, Matrix const& m) {
  if (m.rows != m.cols) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows;
  std::vector<Vec> aug(n, Vec(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m(i, j);
    aug[i][n + i] = 1;
  }
  EchelonForm e = rref(f, aug);
  if (e.rows.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rows[i][n + j];
  return inv;
}

}  // namespace ucycle
