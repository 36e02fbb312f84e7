#include "pinfloer/grading.hpp"

#include <algorithm>

#include "pinfloer/errors.hpp"

namespace pinfloer {

namespace {

/// Basis rows of span(u) intersect span(w): a kernel computation for the
/// concatenated coefficient map (c, d) -> sum c_i u_i - sum d_j w_j.
RatMat intersect_spans(const RatMat& u, const RatMat& w, int ambient) {
  const int gu = rm_rows(u), gw = rm_rows(w);
  RatMat stacked = rm_zero(ambient, gu + gw);
  for (int r = 0; r < ambient; ++r) {
    for (int k = 0; k < gu; ++k) stacked[r][k] = u[k][r];
    for (int k = 0; k < gw; ++k) stacked[r][gu + k] = -w[k][r];
  }
  RatMat out;
  for (const auto& cd : rm_nullspace(stacked)) {
    RatVec v(ambient, Rational(0));
    for (int k = 0; k < gu; ++k) {
      for (int r = 0; r < ambient; ++r) v[r] += cd[k] * u[k][r];
    }
    bool nonzero = false;
    for (const auto& entry : v) nonzero = nonzero || entry != 0;
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

/// Rows spanning {v in span(inside) : ip(v, s) = 0 for all rows s of sub}.
RatMat complement_within(const SymplecticSpace& space, const RatMat& sub,
                         const RatMat& inside) {
  const int g = rm_rows(inside);
  if (rm_rows(sub) == 0) return inside;
  RatMat constraints = rm_zero(rm_rows(sub), g);
  for (int r = 0; r < rm_rows(sub); ++r) {
    for (int c = 0; c < g; ++c) constraints[r][c] = space.ip(sub[r], inside[c]);
  }
  RatMat out;
  for (const auto& coeff : rm_nullspace(constraints)) {
    RatVec v(space.dim(), Rational(0));
    for (int c = 0; c < g; ++c) {
      for (int r = 0; r < space.dim(); ++r) v[r] += coeff[c] * inside[c][r];
    }
    out.push_back(std::move(v));
  }
  return out;
}

void validate_lagrangian(const SymplecticSpace& space, const LagrangianSubspace& l,
                         const char* which) {
  const auto& basis = l.basis();
  if (rm_rows(basis) != space.genus()) {
    throw input_error(std::string(which) + ": basis size differs from the genus");
  }
  for (const auto& row : basis) {
    if (static_cast<int>(row.size()) != space.dim()) {
      throw input_error(std::string(which) + ": vector length differs from 2g");
    }
  }
  if (rm_rank(basis) != space.genus()) {
    throw input_error(std::string(which) + ": basis is not independent");
  }
  for (int i = 0; i < rm_rows(basis); ++i) {
    for (int j = i; j < rm_rows(basis); ++j) {
      if (space.form(basis[i], basis[j]) != 0) {
        throw input_error(std::string(which) + ": intersection form does not vanish");
      }
    }
  }
}

RatVec pad_left(const RatVec& v, int total) {
  RatVec out(total, Rational(0));
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

RatVec pad_right(const RatVec& v, int total) {
  RatVec out(total, Rational(0));
  std::copy(v.begin(), v.end(), out.end() - static_cast<long>(v.size()));
  return out;
}

}  // namespace

SymplecticSpace::SymplecticSpace(int genus) : genus_(genus) {
  if (genus < 1) throw input_error("genus must be positive");
  ip_ = rm_identity(2 * genus);
}

SymplecticSpace::SymplecticSpace(int genus, RatMat inner_product)
    : genus_(genus), ip_(std::move(inner_product)) {
  if (genus < 1) throw input_error("genus must be positive");
  if (rm_rows(ip_) != 2 * genus || rm_cols(ip_) != 2 * genus) {
    throw input_error("inner product has the wrong size");
  }
  if (!rm_is_spd(ip_)) {
    throw input_error("inner product must be symmetric positive definite");
  }
}

Rational SymplecticSpace::form(const RatVec& x, const RatVec& y) const {
  if (static_cast<int>(x.size()) != dim() || static_cast<int>(y.size()) != dim()) {
    throw input_error("vector length differs from 2g");
  }
  Rational acc = 0;
  for (int i = 0; i < genus_; ++i) {
    acc += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i];
  }
  return acc;
}

Rational SymplecticSpace::ip(const RatVec& x, const RatVec& y) const {
  Rational acc = 0;
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) acc += x[i] * ip_[i][j] * y[j];
  }
  return acc;
}

LagrangianSubspace::LagrangianSubspace(const SymplecticSpace& space, RatMat basis)
    : basis_(std::move(basis)) {
  validate_lagrangian(space, *this, "lagrangian");
}

TauMap tau_iso(const SymplecticSpace& space, const LagrangianSubspace& l0,
               const LagrangianSubspace& l1) {
  validate_lagrangian(space, l0, "left subspace");
  validate_lagrangian(space, l1, "right subspace");
  const int g = space.genus();
  const int n = space.dim();

  const RatMat k = intersect_spans(l0.basis(), l1.basis(), n);
  const RatMat m0 = complement_within(space, k, l0.basis());
  const RatMat m1 = complement_within(space, k, l1.basis());
  const int kk = rm_rows(k);

  // On the complement, u maps to the unique m in M1 whose inner products
  // against M1 reproduce the symplectic pairings of u.
  RatMat gram = rm_zero(rm_rows(m1), rm_rows(m1));
  for (int i = 0; i < rm_rows(m1); ++i) {
    for (int j = 0; j < rm_rows(m1); ++j) gram[i][j] = space.ip(m1[j], m1[i]);
  }
  RatMat m0_images;
  for (const auto& u : m0) {
    RatVec rhs(rm_rows(m1), Rational(0));
    for (int j = 0; j < rm_rows(m1); ++j) rhs[j] = space.form(u, m1[j]);
    const auto d = rm_solve(gram, rhs);
    if (!d) throw computation_error("degenerate Gram system in tau");
    RatVec image(n, Rational(0));
    for (int l = 0; l < rm_rows(m1); ++l) {
      for (int r = 0; r < n; ++r) image[r] += (*d)[l] * m1[l][r];
    }
    m0_images.push_back(std::move(image));
  }

  // Express each original basis vector in the split basis K + M0, then map
  // the two parts by identity and by the solved images.
  RatMat split = k;
  split.insert(split.end(), m0.begin(), m0.end());
  RatMat split_cols = rm_zero(n, rm_rows(split));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < rm_rows(split); ++c) split_cols[r][c] = split[c][r];
  }
  TauMap out;
  for (const auto& u : l0.basis()) {
    const auto coords = rm_solve(split_cols, u);
    if (!coords) throw computation_error("basis vector escapes its own span");
    RatVec image(n, Rational(0));
    for (int c = 0; c < kk; ++c) {
      for (int r = 0; r < n; ++r) image[r] += (*coords)[c] * k[c][r];
    }
    for (int c = 0; c < rm_rows(m0); ++c) {
      for (int r = 0; r < n; ++r) image[r] += (*coords)[kk + c] * m0_images[c][r];
    }
    out.images.push_back(std::move(image));
  }
  if (rm_rank(out.images) != g) {
    throw computation_error("tau image failed to stay a basis");
  }
  return out;
}

int orientation_compare(const OrientedBasis& x, const OrientedBasis& y) {
  if (x.ambient_dim != y.ambient_dim) {
    throw computation_error("orientation comparison across different spaces");
  }
  const int m = rm_rows(x.vectors);
  if (m != rm_rows(y.vectors)) {
    throw computation_error("orientation comparison across different ranks");
  }
  if (m == 0) return 1;
  RatMat y_cols = rm_zero(x.ambient_dim, m);
  for (int r = 0; r < x.ambient_dim; ++r) {
    for (int c = 0; c < m; ++c) y_cols[r][c] = y.vectors[c][r];
  }
  RatMat change = rm_zero(m, m);
  for (int i = 0; i < m; ++i) {
    const auto coords = rm_solve(y_cols, x.vectors[i]);
    if (!coords) throw computation_error("bases do not span the same subspace");
    for (int r = 0; r < m; ++r) change[r][i] = (*coords)[r];
  }
  const Rational det = rm_det(change);
  if (det == 0) throw computation_error("degenerate orientation comparison");
  return det > 0 ? 1 : -1;
}

CoupledOrientation canonical_coupled_orientation(const SurfaceHomologyData& data) {
  const int n = data.space.dim();
  const TauMap tau = tau_iso(data.space, data.alpha, data.beta);
  CoupledOrientation out;
  out.ambient_dim = 2 * n;
  for (int i = 0; i < data.space.genus(); ++i) {
    out.vectors.push_back(pad_left(data.alpha.basis()[i], 2 * n));
    out.vectors.push_back(pad_right(tau.images[i], 2 * n));
  }
  return out;
}

std::pair<int, int> betti_numbers(const SurfaceHomologyData& data) {
  const int n = data.space.dim();
  const int g = data.space.genus();

  // Route one: the intersection of the two subspaces.
  RatMat stacked = data.alpha.basis();
  const auto& bb = data.beta.basis();
  stacked.insert(stacked.end(), bb.begin(), bb.end());
  const int h2 = 2 * g - rm_rank(stacked);

  // Route two: corank of the map into the two quotients, with the quotients
  // realized through annihilators of each subspace.
  const RatMat ann_a = rm_nullspace(data.alpha.basis());
  const RatMat ann_b = rm_nullspace(data.beta.basis());
  RatMat quot = rm_zero(rm_rows(ann_a) + rm_rows(ann_b), n);
  for (int r = 0; r < rm_rows(ann_a); ++r) quot[r] = ann_a[r];
  for (int r = 0; r < rm_rows(ann_b); ++r) quot[rm_rows(ann_a) + r] = ann_b[r];
  const int b1 = n - rm_rank(quot);

  if (b1 != h2) {
    throw computation_error("first Betti number disagrees with the intersection rank");
  }
  return {b1, h2};
}

int gr_hf(const SurfaceHomologyData& data, const GeneratorLocalData& x) {
  const int g = data.space.genus();
  if (static_cast<int>(x.sigma.size()) != g || static_cast<int>(x.eps.size()) != g) {
    throw input_error("generator data size differs from the genus");
  }
  std::vector<char> seen(g, 0);
  for (int v : x.sigma) {
    if (v < 0 || v >= g || seen[v]) throw input_error("sigma is not a bijection");
    seen[v] = 1;
  }
  int s1 = 1;
  for (int e : x.eps) {
    if (e != 1 && e != -1) throw input_error("local signs must be +1 or -1");
    s1 *= e;
  }

  const int n = data.space.dim();
  OrientedBasis generator;
  generator.ambient_dim = 2 * n;
  for (int i = 0; i < g; ++i) {
    generator.vectors.push_back(pad_left(data.alpha.basis()[i], 2 * n));
    generator.vectors.push_back(pad_right(data.beta.basis()[x.sigma[i]], 2 * n));
  }
  const int s2 = orientation_compare(generator, canonical_coupled_orientation(data));

  const int b1 = betti_numbers(data).first;
  const int gr = s1 * s2 == 1 ? g : g + 1;
  return ((gr + g + b1) % 2 + 2) % 2;
}

OrientedBasis induced_coupled_orientation(const RatMat& f, const OrientedBasis& o) {
  const int f_dim = rm_rows(f);
  const int e_dim = rm_cols(f);
  if (o.ambient_dim != f_dim + e_dim) {
    throw input_error("orientation ambient differs from target plus source");
  }

  // Image basis: nonzero rows of the reduced transpose.
  RatMat ft = rm_transpose(f);
  const int rank = static_cast<int>(rm_rref(ft).size());
  RatMat image(ft.begin(), ft.begin() + rank);

  const RatMat kernel = rm_nullspace(f);
  const RatMat coker =
      image.empty() ? rm_identity(f_dim) : rm_nullspace(image);
  const RatMat source_complement =
      kernel.empty() ? rm_identity(e_dim) : rm_nullspace(kernel);

  // The input must be a genuine basis of coker + ker, given in the
  // target-slot-first coordinates.
  const int want = rm_rows(coker) + rm_rows(kernel);
  if (rm_rows(o.vectors) != want || rm_rank(o.vectors) != want) {
    throw input_error("orientation input is not a basis of coker plus ker");
  }
  for (const auto& v : o.vectors) {
    if (static_cast<int>(v.size()) != f_dim + e_dim) {
      throw input_error("orientation vector has the wrong length");
    }
    RatVec target_part(v.begin(), v.begin() + f_dim);
    RatVec source_part(v.begin() + f_dim, v.end());
    RatMat probe = coker;
    probe.push_back(target_part);
    if (rm_rank(probe) != rm_rows(coker)) {
      throw input_error("orientation vector leaves the cokernel slot");
    }
    probe = kernel;
    probe.push_back(source_part);
    if (rm_rank(probe) != rm_rows(kernel)) {
      throw input_error("orientation vector leaves the kernel slot");
    }
  }

  OrientedBasis out;
  out.ambient_dim = f_dim + e_dim;
  out.vectors = o.vectors;
  for (const auto& u : source_complement) {
    out.vectors.push_back(pad_left(rm_apply(f, u), f_dim + e_dim));
    out.vectors.push_back(pad_right(u, f_dim + e_dim));
  }
  return out;
}

}  // namespace pinfloer
