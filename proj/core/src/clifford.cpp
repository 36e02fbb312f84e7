#include "pinfloer/clifford.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "pinfloer/errors.hpp"

namespace pinfloer {

namespace {

constexpr int kMaxDim = 31;

void check_dim(int dim) {
  if (dim < 0 || dim > kMaxDim) {
    throw input_error("Clifford dimension out of range: " + std::to_string(dim));
  }
}

Scalar dot(const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
  Scalar acc;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

}  // namespace

int blade_reorder_swaps(BladeMask a, BladeMask b) {
  int count = 0;
  a >>= 1;
  while (a != 0) {
    count += std::popcount(a & b);
    a >>= 1;
  }
  return count;
}

CliffordElement::CliffordElement(int dim) : dim_(dim) { check_dim(dim); }

CliffordElement::CliffordElement(int dim, std::map<BladeMask, Scalar> terms)
    : dim_(dim), terms_(std::move(terms)) {
  check_dim(dim);
  for (const auto& [blade, coeff] : terms_) {
    (void)coeff;
    if ((blade >> dim) != 0) {
      throw input_error("blade uses a generator beyond the ambient dimension");
    }
  }
  prune();
}

CliffordElement CliffordElement::scalar(int dim, const Scalar& value) {
  CliffordElement out(dim);
  if (!value.is_zero()) out.terms_[0] = value;
  return out;
}

CliffordElement CliffordElement::generator(int dim, int index) {
  check_dim(dim);
  if (index < 0 || index >= dim) {
    throw input_error("generator index out of range: " + std::to_string(index));
  }
  CliffordElement out(dim);
  out.terms_[BladeMask{1} << index] = Scalar::one();
  return out;
}

CliffordElement CliffordElement::vector(const std::vector<Scalar>& coords) {
  CliffordElement out(static_cast<int>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i].is_zero()) out.terms_[BladeMask{1} << i] = coords[i];
  }
  return out;
}

const Scalar& CliffordElement::coefficient(BladeMask blade) const {
  static const Scalar kZero;
  auto it = terms_.find(blade);
  return it == terms_.end() ? kZero : it->second;
}

int CliffordElement::grade_sign() const {
  if (terms_.empty()) return 0;
  int seen = std::popcount(terms_.begin()->first) % 2;
  for (const auto& [blade, coeff] : terms_) {
    (void)coeff;
    if (std::popcount(blade) % 2 != seen) return 0;
  }
  return seen == 0 ? 1 : -1;
}

int CliffordElement::leading_sign() const {
  if (terms_.empty()) return 0;
  return terms_.begin()->second.sign();
}

CliffordElement CliffordElement::operator-() const {
  CliffordElement out(dim_);
  for (const auto& [blade, coeff] : terms_) out.terms_[blade] = -coeff;
  return out;
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& o) {
  if (dim_ != o.dim_) throw input_error("Clifford dimension mismatch in addition");
  for (const auto& [blade, coeff] : o.terms_) {
    auto [it, inserted] = terms_.emplace(blade, coeff);
    if (!inserted) it->second += coeff;
  }
  prune();
  return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& o) {
  return *this += -o;
}

void CliffordElement::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

std::ostream& operator<<(std::ostream& os, const CliffordElement& x) {
  if (x.terms_.empty()) return os << "0";
  bool first = true;
  for (const auto& [blade, coeff] : x.terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << coeff << ")";
    if (blade != 0) {
      os << "*e";
      for (int i = 0; i < kMaxDim; ++i) {
        if (blade & (BladeMask{1} << i)) os << (i + 1);
      }
    }
  }
  return os;
}

CliffordElement clifford_mul(const CliffordElement& x, const CliffordElement& y) {
  if (x.dim() != y.dim()) throw input_error("Clifford dimension mismatch in product");
  std::map<BladeMask, Scalar> acc;
  for (const auto& [ba, ca] : x.terms()) {
    for (const auto& [bb, cb] : y.terms()) {
      Scalar term = ca * cb;
      if (blade_reorder_swaps(ba, bb) % 2 != 0) term = -term;
      auto [it, inserted] = acc.emplace(ba ^ bb, term);
      if (!inserted) it->second += term;
    }
  }
  return CliffordElement(x.dim(), std::move(acc));
}

CliffordElement clifford_scale(const Scalar& c, const CliffordElement& x) {
  std::map<BladeMask, Scalar> acc;
  for (const auto& [blade, coeff] : x.terms()) acc.emplace(blade, c * coeff);
  return CliffordElement(x.dim(), std::move(acc));
}

CliffordElement clifford_embed(const CliffordElement& x, int big_dim, int shift) {
  check_dim(big_dim);
  if (shift < 0 || shift + x.dim() > big_dim) {
    throw input_error("embedding window does not fit in the target dimension");
  }
  std::map<BladeMask, Scalar> acc;
  for (const auto& [blade, coeff] : x.terms()) acc.emplace(blade << shift, coeff);
  return CliffordElement(big_dim, std::move(acc));
}

PinElement pin_from_vectors(int dim, const std::vector<std::vector<Scalar>>& vectors) {
  check_dim(dim);
  PinElement out;
  out.value = CliffordElement::scalar(dim, Scalar::one());
  out.factors = vectors;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& v = vectors[i];
    if (static_cast<int>(v.size()) != dim) {
      throw input_error("factor " + std::to_string(i) + " has wrong length");
    }
    if (dot(v, v) != Scalar::one()) {
      std::ostringstream msg;
      msg << "factor " << i << " is not a unit vector, norm squared is " << dot(v, v);
      throw input_error(msg.str());
    }
    out.value = clifford_mul(out.value, CliffordElement::vector(v));
  }
  return out;
}

PinElement pin_mul(const PinElement& x, const PinElement& y) {
  PinElement out;
  out.value = clifford_mul(x.value, y.value);
  out.factors = x.factors;
  out.factors.insert(out.factors.end(), y.factors.begin(), y.factors.end());
  return out;
}

PinElement pin_negate(const PinElement& x) {
  PinElement out = x;
  out.value = -out.value;
  return out;
}

OrthogonalMatrix::OrthogonalMatrix(std::vector<std::vector<Scalar>> rows)
    : rows_(std::move(rows)) {
  const int n = static_cast<int>(rows_.size());
  for (const auto& row : rows_) {
    if (static_cast<int>(row.size()) != n) throw input_error("matrix is not square");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Scalar acc;
      for (int k = 0; k < n; ++k) acc += rows_[k][i] * rows_[k][j];
      const Scalar want = i == j ? Scalar::one() : Scalar::zero();
      if (acc != want) {
        std::ostringstream msg;
        msg << "matrix is not orthogonal: column product (" << i << "," << j
            << ") is " << acc;
        throw input_error(msg.str());
      }
    }
  }
}

OrthogonalMatrix OrthogonalMatrix::identity(int dim) {
  std::vector<std::vector<Scalar>> rows(dim, std::vector<Scalar>(dim));
  for (int i = 0; i < dim; ++i) rows[i][i] = Scalar::one();
  return OrthogonalMatrix(std::move(rows));
}

std::vector<Scalar> OrthogonalMatrix::apply(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != dim()) throw input_error("vector length mismatch");
  std::vector<Scalar> out(v.size());
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) out[i] += rows_[i][j] * v[j];
  }
  return out;
}

int OrthogonalMatrix::det_sign() const {
  // Fraction-free elimination is unnecessary at these sizes; plain exact
  // Gaussian elimination over the field is fine.
  auto m = rows_;
  const int n = dim();
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (m[r][col].sign() != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      sign = -sign;
    }
    if (m[col][col].sign() < 0) sign = -sign;
    const Scalar inv = m[col][col].inverse();
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const Scalar factor = m[r][col] * inv;
      for (int c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return sign;
}

OrthogonalMatrix operator*(const OrthogonalMatrix& x, const OrthogonalMatrix& y) {
  if (x.dim() != y.dim()) throw input_error("matrix dimension mismatch in product");
  const int n = x.dim();
  std::vector<std::vector<Scalar>> rows(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) rows[i][j] += x.at(i, k) * y.at(k, j);
    }
  }
  return OrthogonalMatrix(std::move(rows));
}

OrthogonalMatrix pin_to_orthogonal(const PinElement& p) {
  const int n = p.dim();
  auto acc = OrthogonalMatrix::identity(n);
  for (const auto& v : p.factors) {
    std::vector<std::vector<Scalar>> refl(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        refl[i][j] = (i == j ? Scalar::one() : Scalar::zero()) -
                     Scalar::from_int(2) * v[i] * v[j];
      }
    }
    acc = acc * OrthogonalMatrix(std::move(refl));
  }
  return acc;
}

CoupledSpinElement::CoupledSpinElement(PinElement p, PinElement q)
    : p_(std::move(p)), q_(std::move(q)) {
  if ((p_.parity() + q_.parity()) % 2 != 0) {
    throw input_error("coupled pair must have even total parity");
  }
  canonicalize();
}

CoupledSpinElement CoupledSpinElement::identity(int n, int m) {
  return CoupledSpinElement(pin_from_vectors(n, {}), pin_from_vectors(m, {}));
}

void CoupledSpinElement::canonicalize() {
  if (p_.value.leading_sign() < 0) {
    p_ = pin_negate(p_);
    q_ = pin_negate(q_);
  }
}

CoupledSpinElement coupled_mul(const CoupledSpinElement& x, const CoupledSpinElement& y) {
  const int n = x.left_dim() + y.left_dim();
  const int m = x.right_dim() + y.right_dim();

  auto embed_pin = [](const PinElement& e, int big_dim, int shift) {
    PinElement out;
    out.value = clifford_embed(e.value, big_dim, shift);
    for (const auto& v : e.factors) {
      std::vector<Scalar> padded(big_dim);
      for (std::size_t i = 0; i < v.size(); ++i) padded[shift + i] = v[i];
      out.factors.push_back(std::move(padded));
    }
    return out;
  };

  PinElement p = pin_mul(embed_pin(x.left(), n, 0), embed_pin(y.left(), n, x.left_dim()));
  PinElement q =
      pin_mul(embed_pin(x.right(), m, 0), embed_pin(y.right(), m, x.right_dim()));
  return CoupledSpinElement(std::move(p), std::move(q));
}

CoupledSpinElement coupled_from_orthogonal(const PinElement& cover) {
  return CoupledSpinElement(cover, cover);
}

CoupledSpinElement coupled_from_orthogonal(const OrthogonalMatrix& matrix,
                                           const PinElement& cover) {
  if (matrix.dim() != cover.dim()) {
    throw input_error("cover dimension does not match the matrix");
  }
  if (pin_to_orthogonal(cover) != matrix) {
    throw input_error("supplied element does not cover the matrix");
  }
  return coupled_from_orthogonal(cover);
}

CoupledSpinElement coupled_stabilize(const CoupledSpinElement& x, int k) {
  if (k < 0) throw input_error("stabilization amount must be nonnegative");
  return coupled_mul(x, CoupledSpinElement::identity(k, k));
}

PinElement transposition_lift(int dim, int i, int j) {
  check_dim(dim);
  if (i == j || i < 0 || j < 0 || i >= dim || j >= dim) {
    throw input_error("transposition indices out of range");
  }
  std::vector<Scalar> v(dim);
  v[i] = Scalar::inv_sqrt2();
  v[j] = -Scalar::inv_sqrt2();
  return pin_from_vectors(dim, {v});
}

namespace {

void check_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) {
      throw input_error("not a permutation of 0..n-1");
    }
    seen[v] = 1;
  }
}

/// Adjacent-swap positions of a bubble sort of perm, in the order performed.
std::vector<int> bubble_word(std::vector<int> perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<int> word;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i + 1 < n; ++i) {
      if (perm[i] > perm[i + 1]) {
        std::swap(perm[i], perm[i + 1]);
        word.push_back(i);
        moved = true;
      }
    }
  }
  return word;
}

}  // namespace

PinElement permutation_lift(const std::vector<int>& perm) {
  check_permutation(perm);
  const int n = static_cast<int>(perm.size());
  // Sorting perm by swaps at positions a_1..a_m means
  // perm t_{a_1} ... t_{a_m} = id, so perm = t_{a_m} ... t_{a_1}; the lift
  // multiplies the adjacent lifts in that reversed order.
  auto word = bubble_word(perm);
  PinElement acc = pin_from_vectors(n, {});
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    acc = pin_mul(acc, transposition_lift(n, *it, *it + 1));
  }
  return acc;
}

int permutation_transport_sign(const std::vector<int>& perm, int p, int q) {
  check_permutation(perm);
  const int n = static_cast<int>(perm.size());
  if (p == q || p < 0 || q < 0 || p >= n || q >= n) {
    throw input_error("swap positions out of range");
  }
  std::vector<int> target = perm;
  std::swap(target[p], target[q]);

  const CliffordElement lhs =
      clifford_mul(permutation_lift(perm).value, transposition_lift(n, p, q).value);
  const CliffordElement rhs = permutation_lift(target).value;
  if (lhs == rhs) return 1;
  if (lhs == -rhs) return -1;
  throw computation_error("lift transport did not return a matching cover");
}

}  // namespace pinfloer
