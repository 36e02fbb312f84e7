#pragma once

#include <array>
#include <vector>

#include "pinfloer/homology.hpp"
#include "pinfloer/scalar.hpp"

namespace pinfloer {

/// Three oriented curves of distinct slopes on the square torus R^2 / Z^2,
/// pairwise meeting in a single transverse point, together with a basepoint
/// z and a twisting point p. Slopes are primitive integer vectors and the
/// stored orientation signs direct them so that the cyclic intersection
/// numbers satisfy beta.gamma = gamma.delta = delta.beta = -1.
///
/// Each curve family is pinned down by a rational offset: the value of
/// a*y - b*x along the curve, where (a, b) is the oriented direction
/// (orientation times slope). That quantity is constant on the curve and
/// shifts by integers under deck translations, so it is well defined mod 1.
///
/// The defaults realize the standard picture on the unit square: beta
/// horizontal through y = 0, gamma along the diagonal through the origin
/// (oriented backwards), delta vertical through x = 1/2, basepoint
/// z = (0, 1/2) at a cell center, twisting point p = (1/2, 1/4) on the
/// delta curve below its crossings.
struct GenusOneTriple {
  std::array<long long, 2> beta_slope{1, 0};
  std::array<long long, 2> gamma_slope{1, 1};
  std::array<long long, 2> delta_slope{0, 1};
  int beta_orientation = 1;
  int gamma_orientation = -1;
  int delta_orientation = 1;
  Rational beta_offset = Rational(0);
  Rational gamma_offset = Rational(0);
  Rational delta_offset = Rational(-1, 2);
  std::array<Rational, 2> z{Rational(0), Rational(1, 2)};
  std::array<Rational, 2> p{Rational(1, 2), Rational(1, 4)};
};

/// One translation class of embedded triangles in the plane with boundary on
/// lifts of the three curves, corners at lifts of the three pairwise
/// intersection points, and corner order beta/gamma, delta/beta, gamma/delta.
/// Classes come in pairs indexed by k = 1, 2, ...; the two members of a pair
/// are exchanged by the 180 degree rotation of the torus about z.
struct TriangleClass {
  /// Pair index. The legs of the triangle have length k - 1/2.
  int k = 0;
  /// +1 for the member whose delta edge points up, -1 for its rotated mate.
  int side = 0;
  /// Number of translates of z in the open triangle.
  long long n_z = 0;
  /// Parity of the number of translates of p on the open delta edge.
  int delta_p_parity = 0;
  /// Contribution sign before any twisting, normalized to +1.
  int untwisted_sign = 0;
  /// Corners of a plane representative, in torus coordinates, ordered
  /// beta/gamma then delta/beta then gamma/delta.
  std::array<std::array<Rational, 2>, 3> vertices;
};

/// All triangle classes with pair index at most max_k, ordered by k with the
/// side +1 member first. Throws input_error when max_k < 1 or when the
/// configuration is invalid: a cyclic intersection number differing from -1,
/// z touching a curve, the rotation about z failing to preserve the three
/// families, or p not sitting on the delta curve away from the others.
std::vector<TriangleClass> enumerate_triangles(const GenusOneTriple& t,
                                               int max_k);

/// Signed count over the pair with index k. Untwisted, both members count
/// with their common sign and the result is +2 or -2. Twisted, each member
/// is weighted by (-1) to its delta_p_parity and the pair cancels to 0.
int pair_sum(const GenusOneTriple& t, int k, bool twisted);

/// Two isotopic embedded circles on an annulus meeting transversely, with a
/// common orientation convention. Reversing both orientations leaves every
/// derived sign unchanged.
struct IsotopicCirclePair {
  int intersection_count = 2;
  bool reversed_orientations = false;
};

/// One of the two bigons bounded by an isotopic circle pair. Lobe 0 sits
/// between the first and second crossing, lobe 1 wraps around the other way.
struct BigonClass {
  int lobe = 0;
  int sign = 0;
};

/// The two bigon classes, with opposite signs. Throws input_error unless the
/// pair meets in exactly two points.
std::vector<BigonClass> enumerate_bigons(const IsotopicCirclePair& pair);

/// Rank two chain complex spanned by the two crossings, with the boundary
/// the sum of the signed bigon contributions. The signs cancel, so the
/// differential vanishes and homology has total rank two.
IntChainComplex bigon_complex(const IsotopicCirclePair& pair);

}  // namespace pinfloer
