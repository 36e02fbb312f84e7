#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "pinfloer/scalar.hpp"

namespace pinfloer {

/// Sparse matrix over arbitrary-precision integers. No zero entries are ever
/// stored and coordinates are unique by construction.
class SparseIntMatrix {
public:
  SparseIntMatrix() : rows_count_(0), cols_count_(0) {}
  SparseIntMatrix(int rows, int cols);

  int rows() const { return rows_count_; }
  int cols() const { return cols_count_; }

  /// Entry value, zero when absent.
  const Int& at(int r, int c) const;
  /// Overwrites an entry; a zero value erases it.
  void set(int r, int c, Int value);
  void add(int r, int c, const Int& value);

  long nnz() const;
  /// All stored entries as (row, col, value), row-major order.
  std::vector<std::tuple<int, int, Int>> entries() const;
  const std::map<int, Int>& row(int r) const { return data_[r]; }

  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    return a.rows_count_ == b.rows_count_ && a.cols_count_ == b.cols_count_ &&
           a.data_ == b.data_;
  }

private:
  int rows_count_;
  int cols_count_;
  std::vector<std::map<int, Int>> data_;
};

SparseIntMatrix sparse_mul(const SparseIntMatrix& a, const SparseIntMatrix& b);
SparseIntMatrix sparse_identity(int n);

/// Exact determinant by fraction-free elimination; intended for the modest
/// sizes of transformation matrices and oracles.
Int int_determinant(const SparseIntMatrix& m);

struct SmithResult {
  /// Diagonal entries d_1 | d_2 | ..., nonnegative, zeros trimmed.
  std::vector<Int> diagonal;
  /// D as a matrix of the original shape.
  SparseIntMatrix d;
  /// Present only when transforms were requested: M = u * d * v with both
  /// factors unimodular.
  std::optional<SparseIntMatrix> u;
  std::optional<SparseIntMatrix> v;
};

/// Smith normal form. Pivots are chosen with least absolute value, breaking
/// ties by fewest combined row and column neighbors. When `with_transforms`
/// is set the factors are accumulated and the factorization is re-verified
/// entry by entry, including determinant checks; a failure there throws
/// computation_error. Production callers leave it off and get D alone.
SmithResult smith_normal_form(const SparseIntMatrix& m, bool with_transforms = false);

/// One homology group: free rank plus torsion coefficients in a divisibility
/// chain, each at least 2.
struct HomologyGroup {
  long free_rank = 0;
  std::vector<Int> torsion;

  friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

/// Chain complex of free integer modules: boundaries[k] maps C_{k+1} into
/// C_k and has shape ranks[k] x ranks[k+1].
struct IntChainComplex {
  std::vector<int> ranks;
  std::vector<SparseIntMatrix> boundaries;
};

/// Homology groups H_k for every k, computed gradewise through Smith normal
/// form. The composite of consecutive boundaries is checked first; a nonzero
/// entry is reported in the thrown computation_error as a witness. Passing
/// `self_check` forwards transform verification into every SNF call.
std::vector<HomologyGroup> homology_of_complex(const IntChainComplex& complex,
                                               bool self_check = false);

/// Key for bigraded summaries: homological grading plus twice the filtration
/// grading (kept doubled so halves stay exact).
struct Bigrading {
  int maslov = 0;
  int alexander_twice = 0;

  friend bool operator<(const Bigrading& a, const Bigrading& b) {
    if (a.alexander_twice != b.alexander_twice) {
      return a.alexander_twice < b.alexander_twice;
    }
    return a.maslov < b.maslov;
  }
  friend bool operator==(const Bigrading& a, const Bigrading& b) {
    return a.maslov == b.maslov && a.alexander_twice == b.alexander_twice;
  }
};

/// Bigraded homology: one group per occupied bigrading.
struct HomologySummary {
  std::map<Bigrading, HomologyGroup> groups;

  long total_free_rank() const;
};

}  // namespace pinfloer
