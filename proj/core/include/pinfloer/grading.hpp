#pragma once

#include <utility>
#include <vector>

#include "pinfloer/ratmat.hpp"

namespace pinfloer {

/// First homology of a genus g surface as a symplectic vector space. The
/// standard basis is interleaved (a_1, b_1, ..., a_g, b_g) and the
/// intersection form pairs a_i with b_i. An auxiliary inner product is
/// carried for complement constructions; orientation-level outputs do not
/// depend on it.
class SymplecticSpace {
public:
  /// Identity inner product.
  explicit SymplecticSpace(int genus);
  /// Custom symmetric positive definite inner product of size 2g x 2g.
  SymplecticSpace(int genus, RatMat inner_product);

  int genus() const { return genus_; }
  int dim() const { return 2 * genus_; }
  const RatMat& inner_product() const { return ip_; }

  Rational form(const RatVec& x, const RatVec& y) const;
  Rational ip(const RatVec& x, const RatVec& y) const;

private:
  int genus_;
  RatMat ip_;
};

/// Half-dimensional subspace on which the intersection form vanishes,
/// carried with a chosen ordered basis.
class LagrangianSubspace {
public:
  /// Throws input_error when the basis does not have exactly g independent
  /// vectors of length 2g, or when the form does not vanish on it.
  LagrangianSubspace(const SymplecticSpace& space, RatMat basis);

  const RatMat& basis() const { return basis_; }
  int rank() const { return static_cast<int>(basis_.size()); }

private:
  RatMat basis_;
};

/// Homological shadow of a Heegaard diagram: the two Lagrangians spanned by
/// the attaching curves, each with its ordered, oriented curve basis.
struct SurfaceHomologyData {
  SurfaceHomologyData(SymplecticSpace space_in, RatMat alpha_basis, RatMat beta_basis)
      : space(std::move(space_in)),
        alpha(space, std::move(alpha_basis)),
        beta(space, std::move(beta_basis)) {}

  SymplecticSpace space;
  LagrangianSubspace alpha;
  LagrangianSubspace beta;
};

/// Combinatorial data of one generator: its point on alpha_i lies on
/// beta_{sigma(i)} and meets it with local sign eps[i]. Indices 0-based.
struct GeneratorLocalData {
  std::vector<int> sigma;
  std::vector<int> eps;
};

/// Ordered list of vectors whose span and order define an orientation of a
/// subspace of an ambient coordinate space.
struct OrientedBasis {
  int ambient_dim = 0;
  RatMat vectors;
};

using CoupledOrientation = OrientedBasis;

/// Images of the L0 basis vectors under the canonical map L0 -> L1.
struct TauMap {
  RatMat images;
};

/// Canonical isomorphism between two Lagrangians of the same space: the
/// identity on their intersection, and on its inner-product complement M0 the
/// map sending u to the unique m in M1 with ip(m, w) = form(u, w) for every
/// w in M1. Throws input_error when a subspace fails the Lagrangian check
/// against `space`.
TauMap tau_iso(const SymplecticSpace& space, const LagrangianSubspace& l0,
               const LagrangianSubspace& l1);

/// Sign comparing two ordered bases of the same subspace: +1 when the change
/// of basis has positive determinant. Throws computation_error when the spans
/// differ or a determinant degenerates.
int orientation_compare(const OrientedBasis& x, const OrientedBasis& y);

/// The orientation of A + B inside the doubled space Q^{2g} + Q^{2g} given by
/// the shuffled basis (v_1, tau v_1, ..., v_g, tau v_g) built from the alpha
/// basis. The orientation class does not depend on which basis of A is used.
CoupledOrientation canonical_coupled_orientation(const SurfaceHomologyData& data);

/// (b_1, h_2) of the glued three-manifold, via two independent computations:
/// h_2 as dim(A intersect B), b_1 as the corank of the map into the two
/// quotients. Always equal; inequality would throw computation_error.
std::pair<int, int> betti_numbers(const SurfaceHomologyData& data);

/// Absolute Z/2 grading of a generator from homological data alone. Combines
/// the product of local signs with the determinant comparing the generator's
/// shuffled curve basis against the canonical coupled orientation.
int gr_hf(const SurfaceHomologyData& data, const GeneratorLocalData& x);

/// Transports an orientation of coker(f) + ker(f) to one of F + E. The input
/// basis lives in the F-slot-first coordinates of F + E and must span
/// coker + ker, with coker realized as the orthogonal complement of the image
/// inside F and ker's complement mapped through f. Output: the input vectors
/// verbatim, then the interleaved graph pairs (f u_j, 0), (0, u_j) over a
/// basis u_j of the complement of ker in E.
OrientedBasis induced_coupled_orientation(const RatMat& f, const OrientedBasis& o);

}  // namespace pinfloer
