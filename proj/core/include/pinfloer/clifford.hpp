#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "pinfloer/scalar.hpp"

namespace pinfloer {

/// A basis blade is encoded as a bitmask over generators: bit i set means the
/// factor e_{i+1} is present, and blades are written with ascending indices.
using BladeMask = std::uint32_t;

/// Number of index swaps needed to merge the generator lists of two blades,
/// i.e. the exponent of -1 in e_A * e_B = (-1)^swaps e_{A xor B} when every
/// generator squares to +1.
int blade_reorder_swaps(BladeMask a, BladeMask b);

/// Element of the real Clifford algebra Cl(n) with positive-definite form,
/// stored as a sparse map from basis blades to exact coefficients.
class CliffordElement {
public:
  CliffordElement() : dim_(0) {}
  explicit CliffordElement(int dim);
  CliffordElement(int dim, std::map<BladeMask, Scalar> terms);

  static CliffordElement scalar(int dim, const Scalar& value);
  static CliffordElement generator(int dim, int index);
  /// Embeds a rational-coordinate vector as a degree-one element.
  static CliffordElement vector(const std::vector<Scalar>& coords);

  int dim() const { return dim_; }
  const std::map<BladeMask, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of a blade, zero when absent.
  const Scalar& coefficient(BladeMask blade) const;

  /// +1 when every blade has even weight, -1 when odd, 0 for mixed or zero.
  /// Group elements are always homogeneous.
  int grade_sign() const;

  /// Sign of the coefficient of the first blade in ascending encoding order.
  /// Used to pick canonical representatives; zero only for the zero element.
  int leading_sign() const;

  CliffordElement operator-() const;
  CliffordElement& operator+=(const CliffordElement& o);
  CliffordElement& operator-=(const CliffordElement& o);
  friend CliffordElement operator+(CliffordElement x, const CliffordElement& y) { return x += y; }
  friend CliffordElement operator-(CliffordElement x, const CliffordElement& y) { return x -= y; }

  friend bool operator==(const CliffordElement& x, const CliffordElement& y) {
    return x.dim_ == y.dim_ && x.terms_ == y.terms_;
  }
  friend bool operator!=(const CliffordElement& x, const CliffordElement& y) { return !(x == y); }

  friend std::ostream& operator<<(std::ostream& os, const CliffordElement& x);

private:
  void prune();

  int dim_;
  std::map<BladeMask, Scalar> terms_;
};

/// Exact product in Cl(n). Requires equal ambient dimensions.
CliffordElement clifford_mul(const CliffordElement& x, const CliffordElement& y);

/// Scales every coefficient.
CliffordElement clifford_scale(const Scalar& c, const CliffordElement& x);

/// Reinterprets an element of Cl(n) inside Cl(big_dim), shifting every
/// generator index up by `shift`. Requires shift + n <= big_dim.
CliffordElement clifford_embed(const CliffordElement& x, int big_dim, int shift);

/// Group element of Pin(n): a signed product of unit vectors. The factor list
/// is retained so the underlying orthogonal transformation can be rebuilt as a
/// product of reflections; negation is tracked in the value alone and does not
/// touch the factors, matching the fact that -p and p induce the same
/// transformation.
struct PinElement {
  CliffordElement value;
  std::vector<std::vector<Scalar>> factors;

  int dim() const { return value.dim(); }
  int parity() const { return static_cast<int>(factors.size() % 2); }

  friend bool operator==(const PinElement& x, const PinElement& y) {
    return x.value == y.value;
  }
  friend bool operator!=(const PinElement& x, const PinElement& y) { return !(x == y); }
};

/// Builds the Pin(n) element e_{v_1} ... e_{v_k} from exact unit vectors.
/// Throws input_error naming the first factor whose norm is not exactly 1, or
/// whose length differs from n. The empty product is the identity.
PinElement pin_from_vectors(int dim, const std::vector<std::vector<Scalar>>& vectors);

PinElement pin_mul(const PinElement& x, const PinElement& y);
PinElement pin_negate(const PinElement& x);

/// Square matrix over Q(sqrt 2) with exact orthogonality, M^T M = I, checked
/// at construction.
class OrthogonalMatrix {
public:
  /// Row-major entries. Throws input_error when the matrix is not square or
  /// not exactly orthogonal.
  explicit OrthogonalMatrix(std::vector<std::vector<Scalar>> rows);

  static OrthogonalMatrix identity(int dim);

  int dim() const { return static_cast<int>(rows_.size()); }
  const Scalar& at(int r, int c) const { return rows_[r][c]; }
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

  /// Exact determinant, always +1 or -1 here.
  int det_sign() const;

  friend OrthogonalMatrix operator*(const OrthogonalMatrix& x, const OrthogonalMatrix& y);
  friend bool operator==(const OrthogonalMatrix& x, const OrthogonalMatrix& y) {
    return x.rows_ == y.rows_;
  }
  friend bool operator!=(const OrthogonalMatrix& x, const OrthogonalMatrix& y) { return !(x == y); }

private:
  OrthogonalMatrix() = default;
  std::vector<std::vector<Scalar>> rows_;
};

/// The orthogonal transformation covered by a Pin element: the composite of
/// the reflections I - 2 v v^T over the recorded factors, applied left to
/// right in factor order. The identity for an empty factor list.
OrthogonalMatrix pin_to_orthogonal(const PinElement& p);

/// Element of the coupled group Spin(n; m): a pair (p, q) in Pin(n) x Pin(m)
/// with even total parity, taken modulo simultaneous negation. The stored
/// representative is canonical: the first nonzero coefficient of p in blade
/// order is positive.
class CoupledSpinElement {
public:
  /// Throws input_error when the parities of p and q differ mod 2.
  CoupledSpinElement(PinElement p, PinElement q);

  static CoupledSpinElement identity(int n, int m);

  int left_dim() const { return p_.dim(); }
  int right_dim() const { return q_.dim(); }
  const PinElement& left() const { return p_; }
  const PinElement& right() const { return q_; }

  /// Both representatives agree after canonicalization, so plain comparison
  /// of the stored pair decides equality of classes.
  friend bool operator==(const CoupledSpinElement& x, const CoupledSpinElement& y) {
    return x.p_ == y.p_ && x.q_ == y.q_;
  }
  friend bool operator!=(const CoupledSpinElement& x, const CoupledSpinElement& y) {
    return !(x == y);
  }

private:
  void canonicalize();

  PinElement p_;
  PinElement q_;
};

/// Product on coupled elements. Dimensions add: the factors of y are embedded
/// above those of x slotwise, then multiplied. Well defined on classes
/// because the two slots acquire identical crossing signs.
CoupledSpinElement coupled_mul(const CoupledSpinElement& x, const CoupledSpinElement& y);

/// Lifts an orthogonal transformation to the coupled group by the diagonal
/// class [(p, p)], where p is either Pin(n) element covering it. The class
/// does not depend on which of the two covers is supplied.
CoupledSpinElement coupled_from_orthogonal(const PinElement& cover);

/// Same, but first checks that `cover` really covers `matrix`; throws
/// input_error otherwise.
CoupledSpinElement coupled_from_orthogonal(const OrthogonalMatrix& matrix,
                                           const PinElement& cover);

/// Multiplies by the identity of Spin(k; k) on the right, growing both slots.
CoupledSpinElement coupled_stabilize(const CoupledSpinElement& x, int k);

/// The Pin(n) lift (e_i - e_j)/sqrt(2) of the transposition that swaps
/// coordinates i and j (0-based, i != j). Squares to +1.
PinElement transposition_lift(int dim, int i, int j);

/// Fixed lift of a permutation into Pin(n): the product of adjacent
/// transposition lifts read off a deterministic bubble-sort factorization.
/// perm maps positions to values and must be a bijection on {0..n-1}.
PinElement permutation_lift(const std::vector<int>& perm);

/// The sign c in s(x) w_{pq} = c s(y), where s is permutation_lift, w_{pq} is
/// transposition_lift, and y = x composed with the swap of positions p, q.
/// Both sides cover the same transformation, so c is +1 or -1.
int permutation_transport_sign(const std::vector<int>& perm, int p, int q);

}  // namespace pinfloer
