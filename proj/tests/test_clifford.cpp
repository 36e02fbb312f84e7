#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "pinfloer/clifford.hpp"
#include "pinfloer/errors.hpp"

using namespace pinfloer;

namespace {

CliffordElement e(int dim, int i) { return CliffordElement::generator(dim, i); }

Scalar rat(long num, long den = 1) { return Scalar(Rational(num, den)); }

std::vector<Scalar> basis_vec(int dim, int i) {
  std::vector<Scalar> v(dim);
  v[i] = Scalar::one();
  return v;
}

/// Random unit vector with rational coordinates: start from a basis vector
/// and stir with exact rational rotations cos = (a^2-b^2)/(a^2+b^2),
/// sin = 2ab/(a^2+b^2) on random coordinate pairs.
std::vector<Scalar> random_rational_unit(std::mt19937& rng, int dim) {
  std::uniform_int_distribution<int> coord(0, dim - 1);
  std::uniform_int_distribution<long> leg(1, 9);
  std::vector<Scalar> v = basis_vec(dim, coord(rng));
  if (dim < 2) return v;
  for (int round = 0; round < 3; ++round) {
    int i = coord(rng), j = coord(rng);
    if (i == j) continue;
    const long a = leg(rng), b = leg(rng);
    const long h = a * a + b * b;
    const Scalar c = rat(a * a - b * b, h);
    const Scalar s = rat(2 * a * b, h);
    const Scalar vi = v[i], vj = v[j];
    v[i] = c * vi - s * vj;
    v[j] = s * vi + c * vj;
  }
  return v;
}

PinElement random_pin(std::mt19937& rng, int dim, int max_factors) {
  std::uniform_int_distribution<int> count(0, max_factors);
  std::vector<std::vector<Scalar>> factors;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) factors.push_back(random_rational_unit(rng, dim));
  return pin_from_vectors(dim, factors);
}

}  // namespace

TEST_SUITE("clifford") {

TEST_CASE("generator relations") {
  const int n = 3;
  CHECK(clifford_mul(e(n, 0), e(n, 0)) == CliffordElement::scalar(n, Scalar::one()));
  CHECK(clifford_mul(e(n, 0), e(n, 1)) == -clifford_mul(e(n, 1), e(n, 0)));
  CHECK(clifford_mul(e(n, 2), e(n, 2)) == CliffordElement::scalar(n, Scalar::one()));
}

TEST_CASE("unit element and associativity on random elements") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> small(-4, 4);
  const int n = 4;
  const CliffordElement one = CliffordElement::scalar(n, Scalar::one());
  for (int trial = 0; trial < 25; ++trial) {
    std::map<BladeMask, Scalar> ta, tb, tc;
    for (BladeMask m = 0; m < (BladeMask{1} << n); ++m) {
      ta[m] = rat(small(rng));
      tb[m] = rat(small(rng));
      tc[m] = rat(small(rng));
    }
    const CliffordElement a(n, ta), b(n, tb), c(n, tc);
    CHECK(clifford_mul(one, a) == a);
    CHECK(clifford_mul(a, one) == a);
    CHECK(clifford_mul(clifford_mul(a, b), c) == clifford_mul(a, clifford_mul(b, c)));
  }
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS((void)clifford_mul(e(2, 0), e(3, 0)), input_error);
}

TEST_CASE("pin_from_vectors checks unit norms and reports the index") {
  const std::vector<Scalar> bad = {rat(1), rat(1)};
  try {
    (void)pin_from_vectors(2, {basis_vec(2, 0), bad});
    FAIL("expected a rejection");
  } catch (const input_error& err) {
    CHECK(std::string(err.what()).find("factor 1") != std::string::npos);
  }
}

TEST_CASE("empty product is the unit with even parity") {
  const PinElement unit = pin_from_vectors(3, {});
  CHECK(unit.value == CliffordElement::scalar(3, Scalar::one()));
  CHECK(unit.parity() == 0);
}

TEST_CASE("single basis factor") {
  const PinElement p = pin_from_vectors(2, {basis_vec(2, 0)});
  CHECK(p.value == e(2, 0));
  CHECK(p.parity() == 1);
}

TEST_CASE("a repeated unit vector squares to one") {
  const std::vector<Scalar> w = {Scalar::inv_sqrt2(), -Scalar::inv_sqrt2()};
  const PinElement p = pin_from_vectors(2, {w, w});
  CHECK(p.value == CliffordElement::scalar(2, Scalar::one()));
}

TEST_CASE("reflection matrices of simple elements") {
  const PinElement p1 = pin_from_vectors(2, {basis_vec(2, 0)});
  const OrthogonalMatrix m1 = pin_to_orthogonal(p1);
  CHECK(m1.at(0, 0) == rat(-1));
  CHECK(m1.at(1, 1) == rat(1));
  CHECK(m1.at(0, 1) == rat(0));
  CHECK(m1.at(1, 0) == rat(0));

  const PinElement swap = transposition_lift(2, 0, 1);
  const OrthogonalMatrix m2 = pin_to_orthogonal(swap);
  CHECK(m2.at(0, 0) == rat(0));
  CHECK(m2.at(0, 1) == rat(1));
  CHECK(m2.at(1, 0) == rat(1));
  CHECK(m2.at(1, 1) == rat(0));

  const PinElement p12 = pin_from_vectors(2, {basis_vec(2, 0), basis_vec(2, 1)});
  const OrthogonalMatrix m3 = pin_to_orthogonal(p12);
  CHECK(m3.at(0, 0) == rat(-1));
  CHECK(m3.at(1, 1) == rat(-1));
  CHECK(m3.at(0, 1) == rat(0));
  CHECK(m3.at(1, 0) == rat(0));

  CHECK(pin_to_orthogonal(pin_from_vectors(3, {})) == OrthogonalMatrix::identity(3));
}

TEST_CASE("transposition lift squares to plus one") {
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const PinElement w = transposition_lift(n, i, j);
        CHECK(clifford_mul(w.value, w.value) ==
              CliffordElement::scalar(n, Scalar::one()));
      }
    }
  }
}

TEST_CASE("double cover kernel on random elements") {
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> dim_dist(1, 4);
  std::uniform_int_distribution<int> mode(0, 2);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = dim_dist(rng);
    const PinElement p = random_pin(rng, n, 4);
    PinElement q;
    switch (mode(rng)) {
      case 0: q = p; break;
      case 1: q = pin_negate(p); break;
      default: q = random_pin(rng, n, 4); break;
    }
    const bool same_matrix = pin_to_orthogonal(p) == pin_to_orthogonal(q);
    const bool same_up_to_sign = (p.value == q.value) || (p.value == -q.value);
    CHECK(same_matrix == same_up_to_sign);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("signed blades form a closed subgroup of size 2^(n+1)") {
  for (int n = 1; n <= 4; ++n) {
    std::vector<CliffordElement> gens;
    gens.push_back(CliffordElement::scalar(n, rat(-1)));
    for (int i = 0; i < n; ++i) gens.push_back(e(n, i));

    // Breadth-first closure under multiplication, compared by printed form
    // via exact equality in a set keyed by the term map.
    auto key = [](const CliffordElement& x) {
      std::vector<std::pair<BladeMask, std::pair<Rational, Rational>>> k;
      for (const auto& [blade, coeff] : x.terms()) {
        k.push_back({blade, {coeff.rational_part(), coeff.sqrt2_part()}});
      }
      return k;
    };
    std::set<decltype(key(gens[0]))> seen;
    std::vector<CliffordElement> frontier = {CliffordElement::scalar(n, Scalar::one())};
    seen.insert(key(frontier[0]));
    while (!frontier.empty()) {
      std::vector<CliffordElement> next;
      for (const auto& x : frontier) {
        for (const auto& g : gens) {
          const CliffordElement y = clifford_mul(x, g);
          if (seen.insert(key(y)).second) next.push_back(y);
        }
      }
      frontier = std::move(next);
    }
    CHECK(seen.size() == (std::size_t{1} << (n + 1)));
  }
}

TEST_CASE("rank one pin group is the Klein four group") {
  const CliffordElement one = CliffordElement::scalar(1, Scalar::one());
  const CliffordElement minus_one = CliffordElement::scalar(1, rat(-1));
  const CliffordElement g = e(1, 0);
  const CliffordElement minus_g = -g;
  const std::vector<CliffordElement> elems = {one, minus_one, g, minus_g};

  // Klein table: every element squares to the identity, and the product of
  // two distinct non-identity elements is the third one.
  for (const auto& x : elems) CHECK(clifford_mul(x, x) == one);
  CHECK(clifford_mul(minus_one, g) == minus_g);
  CHECK(clifford_mul(minus_one, minus_g) == g);
  CHECK(clifford_mul(g, minus_g) == minus_one);
  for (const auto& x : elems) {
    for (const auto& y : elems) {
      CHECK(clifford_mul(x, y) == clifford_mul(y, x));
    }
  }
}

TEST_CASE("coupled classes ignore simultaneous negation") {
  const PinElement p = pin_from_vectors(2, {basis_vec(2, 0)});
  const PinElement q = pin_from_vectors(3, {basis_vec(3, 2)});
  const CoupledSpinElement a(p, q);
  const CoupledSpinElement b(pin_negate(p), pin_negate(q));
  CHECK(a == b);
  CHECK(a.left().value.leading_sign() > 0);
}

TEST_CASE("coupled pairs need even total parity") {
  const PinElement odd = pin_from_vectors(2, {basis_vec(2, 0)});
  const PinElement even = pin_from_vectors(2, {});
  CHECK_THROWS_AS(CoupledSpinElement(odd, even), input_error);
}

TEST_CASE("coupled_mul units and definition unfolding") {
  const auto unit = CoupledSpinElement::identity(1, 1);
  CHECK(coupled_mul(unit, unit) == CoupledSpinElement::identity(2, 2));

  const CoupledSpinElement x(pin_from_vectors(1, {basis_vec(1, 0)}),
                             pin_from_vectors(1, {basis_vec(1, 0)}));
  const CoupledSpinElement y = x;
  const CoupledSpinElement prod = coupled_mul(x, y);
  // e1 (low block) times e2 (high block) in both slots.
  const CliffordElement want =
      clifford_mul(CliffordElement::generator(2, 0), CliffordElement::generator(2, 1));
  CHECK(prod.left().value == want);
  CHECK(prod.right().value == want);
}

TEST_CASE("coupled_mul is independent of representatives") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    PinElement p1 = random_pin(rng, 2, 3);
    PinElement q1 = random_pin(rng, 2, 3);
    if ((p1.parity() + q1.parity()) % 2 != 0) {
      q1 = pin_mul(q1, pin_from_vectors(2, {random_rational_unit(rng, 2)}));
    }
    PinElement p2 = random_pin(rng, 3, 2);
    PinElement q2 = random_pin(rng, 3, 2);
    if ((p2.parity() + q2.parity()) % 2 != 0) {
      q2 = pin_mul(q2, pin_from_vectors(3, {random_rational_unit(rng, 3)}));
    }

    const CoupledSpinElement x(p1, q1);
    const CoupledSpinElement x_flip(pin_negate(p1), pin_negate(q1));
    const CoupledSpinElement y(p2, q2);
    const CoupledSpinElement y_flip(pin_negate(p2), pin_negate(q2));
    const CoupledSpinElement base = coupled_mul(x, y);
    CHECK(coupled_mul(x_flip, y) == base);
    CHECK(coupled_mul(x, y_flip) == base);
    CHECK(coupled_mul(x_flip, y_flip) == base);
  }
}

TEST_CASE("coupled_mul is associative") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    auto draw = [&](int n) {
      PinElement p = random_pin(rng, n, 2);
      PinElement q = random_pin(rng, n, 2);
      if ((p.parity() + q.parity()) % 2 != 0) {
        q = pin_mul(q, pin_from_vectors(n, {random_rational_unit(rng, n)}));
      }
      return CoupledSpinElement(p, q);
    };
    const auto a = draw(1), b = draw(2), c = draw(1);
    CHECK(coupled_mul(coupled_mul(a, b), c) == coupled_mul(a, coupled_mul(b, c)));
  }
}

TEST_CASE("reversing the factor order inside the blocks gives the same class") {
  // With x embedded in the low block and y in the high block, the two
  // multiplication orders differ by (-1)^{kk'} on the left and (-1)^{ll'} on
  // the right; even total parities force these signs to agree.
  std::mt19937 rng(17);
  auto embed_pin = [](const PinElement& src, int big, int shift) {
    PinElement out;
    out.value = clifford_embed(src.value, big, shift);
    for (const auto& v : src.factors) {
      std::vector<Scalar> padded(big);
      for (std::size_t i = 0; i < v.size(); ++i) padded[shift + i] = v[i];
      out.factors.push_back(padded);
    }
    return out;
  };
  int nontrivial = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto draw = [&](int n) {
      PinElement p = random_pin(rng, n, 3);
      PinElement q = random_pin(rng, n, 3);
      if ((p.parity() + q.parity()) % 2 != 0) {
        q = pin_mul(q, pin_from_vectors(n, {random_rational_unit(rng, n)}));
      }
      return CoupledSpinElement(p, q);
    };
    const auto x = draw(2);
    const auto y = draw(2);
    const PinElement xp = embed_pin(x.left(), 4, 0), yp = embed_pin(y.left(), 4, 2);
    const PinElement xq = embed_pin(x.right(), 4, 0), yq = embed_pin(y.right(), 4, 2);
    const CoupledSpinElement forward(pin_mul(xp, yp), pin_mul(xq, yq));
    const CoupledSpinElement reversed(pin_mul(yp, xp), pin_mul(yq, xq));
    CHECK(forward == reversed);
    if (x.left().parity() == 1 && y.left().parity() == 1) ++nontrivial;
  }
  // Make sure genuinely anticommuting parities were exercised.
  CHECK(nontrivial > 10);
}

TEST_CASE("orthogonal lift lands in matched determinant pairs") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const PinElement p = random_pin(rng, 3, 3);
    const CoupledSpinElement c = coupled_from_orthogonal(p);
    const OrthogonalMatrix left = pin_to_orthogonal(c.left());
    const OrthogonalMatrix right = pin_to_orthogonal(c.right());
    CHECK(left == right);
    CHECK(left.det_sign() == right.det_sign());
  }
}

TEST_CASE("orthogonal lift examples") {
  CHECK(coupled_from_orthogonal(pin_from_vectors(2, {})) ==
        CoupledSpinElement::identity(2, 2));

  const PinElement refl = pin_from_vectors(2, {basis_vec(2, 0)});
  const CoupledSpinElement lifted = coupled_from_orthogonal(refl);
  CHECK(lifted.left().value == e(2, 0));
  CHECK(lifted.right().value == e(2, 0));
  CHECK(coupled_from_orthogonal(pin_negate(refl)) == lifted);

  const OrthogonalMatrix m = pin_to_orthogonal(refl);
  CHECK(coupled_from_orthogonal(m, refl) == lifted);
  const PinElement wrong = pin_from_vectors(2, {basis_vec(2, 1)});
  CHECK_THROWS_AS((void)coupled_from_orthogonal(m, wrong), input_error);
}

TEST_CASE("stabilization grows both slots by identity blocks") {
  const CoupledSpinElement x(pin_from_vectors(1, {basis_vec(1, 0)}),
                             pin_from_vectors(2, {basis_vec(2, 1)}));
  const CoupledSpinElement once = coupled_stabilize(x, 1);
  CHECK(once.left_dim() == 2);
  CHECK(once.right_dim() == 3);
  CHECK(coupled_stabilize(once, 2) == coupled_stabilize(x, 3));
  CHECK(coupled_stabilize(CoupledSpinElement::identity(1, 1), 1) ==
        CoupledSpinElement::identity(2, 2));

  // The covers of a stabilized class are block-diagonal extensions.
  const OrthogonalMatrix before = pin_to_orthogonal(x.left());
  const OrthogonalMatrix after = pin_to_orthogonal(once.left());
  for (int i = 0; i < 1; ++i) {
    for (int j = 0; j < 1; ++j) CHECK(after.at(i, j) == before.at(i, j));
  }
  CHECK(after.at(1, 1) == rat(1));
  CHECK(after.at(0, 1) == rat(0));
  CHECK(after.at(1, 0) == rat(0));
}

TEST_CASE("permutation lifts cover permutation matrices") {
  std::mt19937 rng(23);
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      const PinElement s = permutation_lift(perm);
      const OrthogonalMatrix m = pin_to_orthogonal(s);
      // The cover sends basis vector e_i to e_{perm(i)} and nothing else.
      for (int i = 0; i < n; ++i) {
        const auto image = m.apply(basis_vec(n, i));
        for (int r = 0; r < n; ++r) {
          CHECK(image[r] == (r == perm[i] ? rat(1) : rat(0)));
        }
      }
    }
  }
}

TEST_CASE("transport signs are well defined covers") {
  std::mt19937 rng(29);
  for (int n = 2; n <= 5; ++n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      std::uniform_int_distribution<int> pick(0, n - 1);
      const int p = pick(rng);
      int q = pick(rng);
      if (p == q) continue;
      const int c = permutation_transport_sign(perm, p, q);
      CHECK((c == 1 || c == -1));
      // Direct recomputation from the defining identity.
      std::vector<int> target = perm;
      std::swap(target[p], target[q]);
      const CliffordElement lhs = clifford_mul(permutation_lift(perm).value,
                                               transposition_lift(n, p, q).value);
      const CliffordElement rhs = permutation_lift(target).value;
      CHECK(lhs == (c > 0 ? rhs : -rhs));
    }
  }
}

}
