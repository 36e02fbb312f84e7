#include "pinfloer/torus_triangles.hpp"

#include <algorithm>
#include <utility>

#include "pinfloer/errors.hpp"

namespace pinfloer {

namespace {

Int floor_rat(const Rational& q) {
  Int n = numerator(q);
  const Int d = denominator(q);
  Int f = n / d;
  if (n % d != 0 && n < 0) {
    --f;
  }
  return f;
}

/// Representative of q mod 1 inside [0, 1).
Rational frac1(const Rational& q) { return q - Rational(floor_rat(q)); }

long long cross(const std::array<long long, 2>& a,
                const std::array<long long, 2>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

/// The configuration rewritten in the plane basis (beta direction, delta
/// direction). In these coordinates beta curves are y = rb mod 1, gamma
/// curves are y - x = rg mod 1 and delta curves are x = rd mod 1, which is
/// the standard picture every valid triple reduces to.
struct StandardModel {
  Rational rb, rg, rd;
  std::array<Rational, 2> z;
  std::array<Rational, 2> p;
  /// Basis matrix, columns the beta and delta directions; maps standard
  /// coordinates back to torus coordinates.
  std::array<std::array<long long, 2>, 2> basis;
};

std::array<long long, 2> directed(const std::array<long long, 2>& slope,
                                  int orientation) {
  return {orientation * slope[0], orientation * slope[1]};
}

std::array<Rational, 2> to_standard(
    const std::array<std::array<long long, 2>, 2>& basis,
    const std::array<Rational, 2>& v) {
  // The basis has determinant one, so the inverse is integral.
  const Rational x = basis[1][1] * v[0] - basis[0][1] * v[1];
  const Rational y = -basis[1][0] * v[0] + basis[0][0] * v[1];
  return {x, y};
}

std::array<Rational, 2> to_torus(
    const std::array<std::array<long long, 2>, 2>& basis,
    const std::array<Rational, 2>& u) {
  return {basis[0][0] * u[0] + basis[0][1] * u[1],
          basis[1][0] * u[0] + basis[1][1] * u[1]};
}

StandardModel standardize(const GenusOneTriple& t) {
  for (int s : {t.beta_orientation, t.gamma_orientation, t.delta_orientation}) {
    if (s != 1 && s != -1) {
      throw input_error("orientation entries must be +1 or -1");
    }
  }
  const auto db = directed(t.beta_slope, t.beta_orientation);
  const auto dg = directed(t.gamma_slope, t.gamma_orientation);
  const auto dd = directed(t.delta_slope, t.delta_orientation);
  if (cross(db, dg) != -1 || cross(dg, dd) != -1 || cross(dd, db) != -1) {
    throw input_error(
        "the oriented curves must have cyclic intersection numbers "
        "beta.gamma = gamma.delta = delta.beta = -1");
  }

  StandardModel m;
  m.basis = {{{db[0], dd[0]}, {db[1], dd[1]}}};
  // Offsets are the constant value of cross(direction, point) along each
  // curve, and that pairing is basis invariant, so the standard form reads
  // them off directly.
  m.rb = frac1(t.beta_offset);
  m.rg = frac1(-t.gamma_offset);
  m.rd = frac1(-t.delta_offset);
  m.z = to_standard(m.basis, t.z);
  m.p = to_standard(m.basis, t.p);

  const bool z_on_beta = frac1(m.z[1] - m.rb) == 0;
  const bool z_on_delta = frac1(m.z[0] - m.rd) == 0;
  const bool z_on_gamma = frac1(m.z[1] - m.z[0] - m.rg) == 0;
  if (z_on_beta || z_on_delta || z_on_gamma) {
    throw input_error("z must avoid all three curves");
  }
  const bool rot_beta = frac1(2 * (m.z[1] - m.rb)) == 0;
  const bool rot_delta = frac1(2 * (m.z[0] - m.rd)) == 0;
  const bool rot_gamma = frac1(2 * (m.z[1] - m.z[0] - m.rg)) == 0;
  if (!rot_beta || !rot_delta || !rot_gamma) {
    throw input_error(
        "the 180 degree rotation about z must preserve the three curve "
        "families");
  }
  if (frac1(m.p[0] - m.rd) != 0) {
    throw input_error("p must lie on a delta curve");
  }
  if (frac1(m.p[1] - m.rb) == 0 || frac1(m.p[1] - m.p[0] - m.rg) == 0) {
    throw input_error("p must avoid the beta and gamma curves");
  }

  // The rotation constraints pin z to a cell center, which in turn forces
  // the three offsets into the centered normal form below; every leg length
  // is then an integer plus one half.
  if (frac1(m.rd + m.rg - m.rb) != Rational(1, 2)) {
    throw computation_error("offset data escaped the centered normal form");
  }
  return m;
}

long long to_ll(const Rational& q) { return floor_rat(q).convert_to<long long>(); }

/// Translates of `point` landing strictly inside the triangle with corners
/// a, b, c, counted by exact sign tests against the three bounding lines.
long long interior_translates(const std::array<Rational, 2>& a,
                              const std::array<Rational, 2>& b,
                              const std::array<Rational, 2>& c,
                              const std::array<Rational, 2>& point) {
  const Rational lo_x = std::min(a[0], b[0]);
  const Rational hi_x = std::max(a[0], b[0]);
  const Rational lo_y = std::min(a[1], c[1]);
  const Rational hi_y = std::max(a[1], c[1]);
  // Leg sign: +1 when the delta edge points up from b to c.
  const bool up = c[1] > b[1];
  long long count = 0;
  for (long long i = to_ll(lo_x - point[0]); i <= to_ll(hi_x - point[0]) + 1;
       ++i) {
    const Rational x = point[0] + i;
    if (!(x > lo_x && x < hi_x)) {
      continue;
    }
    for (long long j = to_ll(lo_y - point[1]);
         j <= to_ll(hi_y - point[1]) + 1; ++j) {
      const Rational y = point[1] + j;
      if (!(y > lo_y && y < hi_y)) {
        continue;
      }
      const Rational diag = y - x;
      const bool inside = up ? diag < a[1] - a[0] : diag > a[1] - a[0];
      if (inside) {
        ++count;
      }
    }
  }
  return count;
}

/// Translates of `point` on the open vertical edge from b to c.
long long edge_translates(const std::array<Rational, 2>& b,
                          const std::array<Rational, 2>& c,
                          const std::array<Rational, 2>& point) {
  const Rational lo = std::min(b[1], c[1]);
  const Rational hi = std::max(b[1], c[1]);
  long long count = 0;
  for (long long j = to_ll(lo - point[1]); j <= to_ll(hi - point[1]) + 1;
       ++j) {
    const Rational y = point[1] + j;
    if (y > lo && y < hi) {
      ++count;
    }
  }
  return count;
}

TriangleClass build_class(const StandardModel& m, int k, int side) {
  const Rational len = Rational(side * (2 * k - 1), 2);
  // Corner on beta and gamma, then the two corners on the shared delta line.
  const std::array<Rational, 2> a{m.rb - m.rg, m.rb};
  const std::array<Rational, 2> b{a[0] + len, m.rb};
  const std::array<Rational, 2> c{a[0] + len, m.rb + len};

  TriangleClass out;
  out.k = k;
  out.side = side;
  out.n_z = interior_translates(a, b, c, m.z);
  out.delta_p_parity =
      static_cast<int>(edge_translates(b, c, m.p) & 1);
  out.untwisted_sign = 1;
  out.vertices = {to_torus(m.basis, a), to_torus(m.basis, b),
                  to_torus(m.basis, c)};
  return out;
}

}  // namespace

std::vector<TriangleClass> enumerate_triangles(const GenusOneTriple& t,
                                               int max_k) {
  if (max_k < 1) {
    throw input_error("max_k must be at least 1");
  }
  const StandardModel m = standardize(t);
  std::vector<TriangleClass> out;
  out.reserve(2 * static_cast<std::size_t>(max_k));
  for (int k = 1; k <= max_k; ++k) {
    out.push_back(build_class(m, k, +1));
    out.push_back(build_class(m, k, -1));
  }
  return out;
}

int pair_sum(const GenusOneTriple& t, int k, bool twisted) {
  int sum = 0;
  for (const TriangleClass& c : enumerate_triangles(t, k)) {
    if (c.k != k) {
      continue;
    }
    const int twist = twisted && c.delta_p_parity ? -1 : 1;
    sum += c.untwisted_sign * twist;
  }
  return sum;
}

std::vector<BigonClass> enumerate_bigons(const IsotopicCirclePair& pair) {
  if (pair.intersection_count != 2) {
    throw input_error("an isotopic circle pair meets in exactly two points");
  }
  // Crossing signs alternate along the base circle; each bigon inherits the
  // sign of the crossing at its left corner. Reversing both orientations
  // flips the crossing signs and swaps which corner is the left one, so the
  // outcome does not move.
  int first = 1;
  int second = -1;
  if (pair.reversed_orientations) {
    first = -first;
    second = -second;
    std::swap(first, second);
  }
  return {BigonClass{0, first}, BigonClass{1, second}};
}

IntChainComplex bigon_complex(const IsotopicCirclePair& pair) {
  Int total = 0;
  for (const BigonClass& b : enumerate_bigons(pair)) {
    total += b.sign;
  }
  IntChainComplex complex;
  complex.ranks = {1, 1};
  SparseIntMatrix d(1, 1);
  d.set(0, 0, total);
  complex.boundaries = {d};
  return complex;
}

}  // namespace pinfloer
