#include "doctest.h"
#include "pinfloer/scalar.hpp"

using pinfloer::Rational;
using pinfloer::Scalar;

TEST_SUITE("scalar") {

TEST_CASE("field operations are exact") {
  const Scalar x(Rational(3, 2), Rational(-1, 3));
  const Scalar y(Rational(-2), Rational(5, 7));

  CHECK(x + y == Scalar(Rational(-1, 2), Rational(8, 21)));
  CHECK(x - y == Scalar(Rational(7, 2), Rational(-22, 21)));
  // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r.
  CHECK(x * y == Scalar(Rational(-3) - Rational(10, 21),
                        Rational(15, 14) + Rational(2, 3)));
  CHECK(x * x.inverse() == Scalar::one());
  CHECK(y / y == Scalar::one());
  CHECK(-x + x == Scalar::zero());
}

TEST_CASE("sqrt2 squares to two") {
  CHECK(Scalar::sqrt2() * Scalar::sqrt2() == Scalar(Rational(2)));
  CHECK(Scalar::inv_sqrt2() * Scalar::sqrt2() == Scalar::one());
}

TEST_CASE("sign handles mixed coefficients") {
  CHECK(Scalar::zero().sign() == 0);
  CHECK(Scalar::one().sign() == 1);
  CHECK((-Scalar::sqrt2()).sign() == -1);
  // 3 - 2 sqrt2 = 3 - 2.828... > 0, and 4 - 3 sqrt2 < 0.
  CHECK(Scalar(Rational(3), Rational(-2)).sign() == 1);
  CHECK(Scalar(Rational(4), Rational(-3)).sign() == -1);
  CHECK(Scalar(Rational(-3), Rational(2)).sign() == -1);
  CHECK(Scalar(Rational(-4), Rational(3)).sign() == 1);
  // Very close calls: 577/408 is a continued-fraction convergent just above
  // sqrt2, at distance about 2e-6; nudging it down by 1/408^2 crosses over.
  CHECK(Scalar(Rational(577, 408), Rational(-1)).sign() == 1);
  CHECK(Scalar(Rational(577, 408) - Rational(1, 408 * 408), Rational(-1)).sign() == -1);
}

TEST_CASE("inverse of a mixed element") {
  const Scalar s(Rational(1), Rational(1));  // 1 + sqrt2
  CHECK(s.inverse() == Scalar(Rational(-1), Rational(1)));
  CHECK_THROWS_AS((void)Scalar::zero().inverse(), pinfloer::computation_error);
}

}
