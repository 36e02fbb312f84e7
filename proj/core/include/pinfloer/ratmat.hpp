#pragma once

#include <optional>
#include <vector>

#include "pinfloer/errors.hpp"
#include "pinfloer/scalar.hpp"

namespace pinfloer {

/// Dense exact rational vectors and row-major matrices. Small sizes only;
/// plain Gaussian elimination everywhere.
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

inline RatMat rm_zero(int rows, int cols) {
  return RatMat(rows, RatVec(cols, Rational(0)));
}

inline RatMat rm_identity(int n) {
  RatMat m = rm_zero(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline int rm_rows(const RatMat& m) { return static_cast<int>(m.size()); }
inline int rm_cols(const RatMat& m) {
  return m.empty() ? 0 : static_cast<int>(m[0].size());
}

inline RatMat rm_transpose(const RatMat& m) {
  RatMat out = rm_zero(rm_cols(m), rm_rows(m));
  for (int r = 0; r < rm_rows(m); ++r) {
    for (int c = 0; c < rm_cols(m); ++c) out[c][r] = m[r][c];
  }
  return out;
}

inline RatMat rm_mul(const RatMat& a, const RatMat& b) {
  if (rm_cols(a) != rm_rows(b)) throw input_error("matrix shape mismatch in product");
  RatMat out = rm_zero(rm_rows(a), rm_cols(b));
  for (int i = 0; i < rm_rows(a); ++i) {
    for (int k = 0; k < rm_cols(a); ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < rm_cols(b); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

inline RatVec rm_apply(const RatMat& m, const RatVec& v) {
  if (rm_cols(m) != static_cast<int>(v.size())) {
    throw input_error("matrix shape mismatch in application");
  }
  RatVec out(rm_rows(m), Rational(0));
  for (int i = 0; i < rm_rows(m); ++i) {
    for (int j = 0; j < rm_cols(m); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

/// Reduced row echelon form in place; returns the pivot columns in order.
inline std::vector<int> rm_rref(RatMat& m) {
  std::vector<int> pivots;
  const int rows = rm_rows(m), cols = rm_cols(m);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i) {
      if (m[i][c] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[r]);
    const Rational inv = m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rm_rank(RatMat m) { return static_cast<int>(rm_rref(m).size()); }

inline Rational rm_det(RatMat m) {
  const int n = rm_rows(m);
  if (n != rm_cols(m)) throw input_error("determinant of a non-square matrix");
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int i = c; i < n; ++i) {
      if (m[i][c] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return Rational(0);
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const Rational inv = m[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / inv;
      for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

/// Solves A x = b. Empty optional when inconsistent; a single solution with
/// free variables set to zero when underdetermined.
inline std::optional<RatVec> rm_solve(const RatMat& a, const RatVec& b) {
  const int rows = rm_rows(a), cols = rm_cols(a);
  if (static_cast<int>(b.size()) != rows) throw input_error("rhs length mismatch");
  RatMat aug = rm_zero(rows, cols + 1);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  const auto pivots = rm_rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  RatVec x(cols, Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug[k][cols];
  return x;
}

/// Rows form a basis of the kernel of A.
inline RatMat rm_nullspace(RatMat a) {
  const int cols = rm_cols(a);
  const auto pivots = rm_rref(a);
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  RatMat out;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(cols, Rational(0));
    v[c] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a[k][c];
    out.push_back(std::move(v));
  }
  return out;
}

inline bool rm_is_symmetric(const RatMat& m) {
  const int n = rm_rows(m);
  if (rm_cols(m) != n) return false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (m[i][j] != m[j][i]) return false;
    }
  }
  return true;
}

/// Symmetric positive definite, decided exactly by leading principal minors.
inline bool rm_is_spd(const RatMat& m) {
  if (!rm_is_symmetric(m)) return false;
  const int n = rm_rows(m);
  for (int k = 1; k <= n; ++k) {
    RatMat lead = rm_zero(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) lead[i][j] = m[i][j];
    }
    if (rm_det(lead) <= 0) return false;
  }
  return true;
}

}  // namespace pinfloer
