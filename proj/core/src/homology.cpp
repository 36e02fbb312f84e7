#include "pinfloer/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pinfloer/errors.hpp"

namespace pinfloer {

SparseIntMatrix::SparseIntMatrix(int rows, int cols)
    : rows_count_(rows), cols_count_(cols), data_(std::max(rows, 0)) {
  if (rows < 0 || cols < 0) throw input_error("negative matrix dimension");
}

const Int& SparseIntMatrix::at(int r, int c) const {
  static const Int kZero = 0;
  if (r < 0 || r >= rows_count_ || c < 0 || c >= cols_count_) {
    throw input_error("matrix index out of range");
  }
  const auto it = data_[r].find(c);
  return it == data_[r].end() ? kZero : it->second;
}

void SparseIntMatrix::set(int r, int c, Int value) {
  if (r < 0 || r >= rows_count_ || c < 0 || c >= cols_count_) {
    throw input_error("matrix index out of range");
  }
  if (value == 0) {
    data_[r].erase(c);
  } else {
    data_[r][c] = std::move(value);
  }
}

void SparseIntMatrix::add(int r, int c, const Int& value) {
  if (value == 0) return;
  set(r, c, at(r, c) + value);
}

long SparseIntMatrix::nnz() const {
  long total = 0;
  for (const auto& row : data_) total += static_cast<long>(row.size());
  return total;
}

std::vector<std::tuple<int, int, Int>> SparseIntMatrix::entries() const {
  std::vector<std::tuple<int, int, Int>> out;
  for (int r = 0; r < rows_count_; ++r) {
    for (const auto& [c, v] : data_[r]) out.emplace_back(r, c, v);
  }
  return out;
}

SparseIntMatrix sparse_mul(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols() != b.rows()) throw input_error("matrix shape mismatch in product");
  SparseIntMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (const auto& [k, av] : a.row(r)) {
      for (const auto& [c, bv] : b.row(k)) out.add(r, c, av * bv);
    }
  }
  return out;
}

SparseIntMatrix sparse_identity(int n) {
  SparseIntMatrix out(n, n);
  for (int i = 0; i < n; ++i) out.set(i, i, 1);
  return out;
}

Int int_determinant(const SparseIntMatrix& m) {
  const int n = m.rows();
  if (n != m.cols()) throw input_error("determinant of a non-square matrix");
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n, 0));
  for (const auto& [r, c, v] : m.entries()) a[r][c] = v;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a[r][k] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

namespace {

/// Mutable elimination workspace with a column index for neighbor lookups,
/// accumulating the inverse elementary operations into U and V so that the
/// original matrix stays equal to U * current * V.
struct SnfWork {
  int rows, cols;
  std::vector<std::map<int, Int>> row;
  std::vector<std::set<int>> col_rows;
  bool track;
  // Dense transform factors; only allocated in tracking mode.
  std::vector<std::vector<Int>> u, v;

  SnfWork(const SparseIntMatrix& m, bool with_transforms)
      : rows(m.rows()), cols(m.cols()), row(m.rows()), col_rows(m.cols()),
        track(with_transforms) {
    for (const auto& [r, c, val] : m.entries()) {
      row[r][c] = val;
      col_rows[c].insert(r);
    }
    if (track) {
      u.assign(rows, std::vector<Int>(rows, 0));
      for (int i = 0; i < rows; ++i) u[i][i] = 1;
      v.assign(cols, std::vector<Int>(cols, 0));
      for (int i = 0; i < cols; ++i) v[i][i] = 1;
    }
  }

  Int get(int r, int c) const {
    const auto it = row[r].find(c);
    return it == row[r].end() ? Int(0) : it->second;
  }

  void put(int r, int c, Int val) {
    if (val == 0) {
      row[r].erase(c);
      col_rows[c].erase(r);
    } else {
      row[r][c] = std::move(val);
      col_rows[c].insert(r);
    }
  }

  // R_dst += m * R_src; U absorbs the inverse on its columns.
  void add_row(int dst, int src, const Int& m) {
    for (const auto& [c, val] : std::map<int, Int>(row[src])) {
      put(dst, c, get(dst, c) + m * val);
    }
    if (track) {
      for (int i = 0; i < rows; ++i) u[i][src] -= m * u[i][dst];
    }
  }

  // C_dst += m * C_src; V absorbs the inverse on its rows.
  void add_col(int dst, int src, const Int& m) {
    for (const int r : std::set<int>(col_rows[src])) {
      put(r, dst, get(r, dst) + m * get(r, src));
    }
    if (track) {
      for (int j = 0; j < cols; ++j) v[src][j] -= m * v[dst][j];
    }
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    std::vector<int> touched;
    for (const auto& [c, val] : row[i]) touched.push_back(c);
    for (const auto& [c, val] : row[j]) touched.push_back(c);
    std::swap(row[i], row[j]);
    for (int c : touched) {
      col_rows[c].erase(i);
      col_rows[c].erase(j);
      if (row[i].count(c)) col_rows[c].insert(i);
      if (row[j].count(c)) col_rows[c].insert(j);
    }
    if (track) {
      for (int r = 0; r < rows; ++r) std::swap(u[r][i], u[r][j]);
    }
  }

  void swap_cols(int i, int j) {
    if (i == j) return;
    std::set<int> touched = col_rows[i];
    touched.insert(col_rows[j].begin(), col_rows[j].end());
    for (int r : touched) {
      Int a = get(r, i), b = get(r, j);
      put(r, i, std::move(b));
      put(r, j, std::move(a));
    }
    if (track) std::swap(v[i], v[j]);
  }

  void negate_row(int r) {
    for (auto& [c, val] : row[r]) val = -val;
    if (track) {
      for (int i = 0; i < rows; ++i) u[i][r] = -u[i][r];
    }
  }
};

Int abs_int(const Int& v) { return v < 0 ? -v : v; }

/// Best remaining pivot at or beyond position t: least absolute value, then
/// fewest combined neighbors, then lowest coordinates.
bool find_pivot(const SnfWork& w, int t, int& pr, int& pc) {
  bool found = false;
  Int best_val;
  long best_nbrs = 0;
  for (int r = t; r < w.rows; ++r) {
    for (const auto& [c, val] : w.row[r]) {
      if (c < t) continue;
      const Int a = abs_int(val);
      long nbrs = 0;
      for (const auto& [cc, vv] : w.row[r]) {
        if (cc >= t) ++nbrs;
      }
      for (const int rr : w.col_rows[c]) {
        if (rr >= t) ++nbrs;
      }
      if (!found || a < best_val || (a == best_val && nbrs < best_nbrs)) {
        found = true;
        best_val = a;
        best_nbrs = nbrs;
        pr = r;
        pc = c;
      }
    }
  }
  return found;
}

/// Clears row t and column t against the pivot at (t, t), swapping in
/// remainders until both are clean. The pivot strictly shrinks on every
/// swap, so this terminates.
void reduce_position(SnfWork& w, int t) {
  while (true) {
    bool dirty = false;
    const std::set<int> col_snapshot = w.col_rows[t];
    for (int r : col_snapshot) {
      if (r == t || r < t) continue;
      const Int val = w.get(r, t);
      if (val == 0) continue;
      const Int q = val / w.get(t, t);
      if (q != 0) w.add_row(r, t, -q);
      if (w.get(r, t) != 0) {
        w.swap_rows(r, t);
        dirty = true;
        break;
      }
    }
    if (dirty) continue;
    const std::map<int, Int> row_snapshot = w.row[t];
    for (const auto& [c, val] : row_snapshot) {
      if (c == t || c < t) continue;
      const Int q = val / w.get(t, t);
      if (q != 0) w.add_col(c, t, -q);
      if (w.get(t, c) != 0) {
        w.swap_cols(c, t);
        dirty = true;
        break;
      }
    }
    if (dirty) continue;
    bool col_clean = true;
    for (int r : w.col_rows[t]) {
      if (r > t) col_clean = false;
    }
    if (col_clean && w.row[t].size() <= 1) return;
  }
}

SparseIntMatrix dense_to_sparse(const std::vector<std::vector<Int>>& m) {
  SparseIntMatrix out(static_cast<int>(m.size()),
                      m.empty() ? 0 : static_cast<int>(m[0].size()));
  for (int r = 0; r < static_cast<int>(m.size()); ++r) {
    for (int c = 0; c < static_cast<int>(m[r].size()); ++c) {
      if (m[r][c] != 0) out.set(r, c, m[r][c]);
    }
  }
  return out;
}

}  // namespace

SmithResult smith_normal_form(const SparseIntMatrix& m, bool with_transforms) {
  SnfWork w(m, with_transforms);
  const int bound = std::min(w.rows, w.cols);

  int t = 0;
  for (; t < bound; ++t) {
    int pr = 0, pc = 0;
    if (!find_pivot(w, t, pr, pc)) break;
    w.swap_rows(t, pr);
    w.swap_cols(t, pc);
    reduce_position(w, t);
  }
  const int rank = t;

  for (int i = 0; i < rank; ++i) {
    if (w.get(i, i) < 0) w.negate_row(i);
  }

  // Repair the divisibility chain: fold a violating successor into its
  // predecessor's column and re-reduce locally until the chain holds.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < rank; ++i) {
      const Int a = w.get(i, i);
      const Int b = w.get(i + 1, i + 1);
      if (a != 0 && b % a == 0) continue;
      w.add_col(i, i + 1, 1);
      reduce_position(w, i);
      if (w.get(i, i) < 0) w.negate_row(i);
      if (w.get(i + 1, i + 1) < 0) w.negate_row(i + 1);
      changed = true;
    }
  }

  SmithResult out;
  out.d = SparseIntMatrix(w.rows, w.cols);
  for (int i = 0; i < rank; ++i) {
    out.d.set(i, i, w.get(i, i));
    out.diagonal.push_back(w.get(i, i));
  }
  if (with_transforms) {
    out.u = dense_to_sparse(w.u);
    out.v = dense_to_sparse(w.v);
    const SparseIntMatrix rebuilt = sparse_mul(sparse_mul(*out.u, out.d), *out.v);
    if (!(rebuilt == m)) {
      throw computation_error("normal form factorization failed to reproduce the input");
    }
    const Int du = int_determinant(*out.u);
    const Int dv = int_determinant(*out.v);
    if ((du != 1 && du != -1) || (dv != 1 && dv != -1)) {
      throw computation_error("normal form transforms are not unimodular");
    }
  }
  return out;
}

std::vector<HomologyGroup> homology_of_complex(const IntChainComplex& complex,
                                               bool self_check) {
  const int n = static_cast<int>(complex.ranks.size());
  if (n == 0) {
    if (!complex.boundaries.empty()) {
      throw input_error("boundaries supplied for an empty complex");
    }
    return {};
  }
  if (static_cast<int>(complex.boundaries.size()) != n - 1) {
    throw input_error("boundary count must be one less than the rank count");
  }
  for (int k = 0; k + 1 < n; ++k) {
    const auto& b = complex.boundaries[k];
    if (b.rows() != complex.ranks[k] || b.cols() != complex.ranks[k + 1]) {
      std::ostringstream msg;
      msg << "boundary " << k << " has shape " << b.rows() << "x" << b.cols()
          << ", expected " << complex.ranks[k] << "x" << complex.ranks[k + 1];
      throw input_error(msg.str());
    }
  }
  for (int k = 0; k + 2 < n; ++k) {
    const SparseIntMatrix square = sparse_mul(complex.boundaries[k], complex.boundaries[k + 1]);
    if (square.nnz() != 0) {
      const auto [r, c, v] = square.entries().front();
      std::ostringstream msg;
      msg << "boundary composite is nonzero: degree " << k + 2 << " basis element "
          << c << " reaches degree " << k << " element " << r << " with coefficient "
          << v;
      throw computation_error(msg.str());
    }
  }

  std::vector<SmithResult> smith;
  for (const auto& b : complex.boundaries) {
    smith.push_back(smith_normal_form(b, self_check));
  }

  std::vector<HomologyGroup> out(n);
  for (int k = 0; k < n; ++k) {
    const long rank_out = k > 0 ? static_cast<long>(smith[k - 1].diagonal.size()) : 0;
    const long rank_in = k < n - 1 ? static_cast<long>(smith[k].diagonal.size()) : 0;
    out[k].free_rank = complex.ranks[k] - rank_out - rank_in;
    if (k < n - 1) {
      for (const Int& d : smith[k].diagonal) {
        if (d > 1) out[k].torsion.push_back(d);
      }
    }
  }
  return out;
}

long HomologySummary::total_free_rank() const {
  long total = 0;
  for (const auto& [key, group] : groups) total += group.free_rank;
  return total;
}

}  // namespace pinfloer
