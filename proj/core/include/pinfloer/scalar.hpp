#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <ostream>

#include "pinfloer/errors.hpp"

namespace pinfloer {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Element of Q(sqrt 2), stored exactly as a + b*sqrt(2) with rational a, b.
///
/// The extension is needed because transposition lifts scale unit vectors by
/// 1/sqrt(2). All comparisons and signs are decided exactly by rational case
/// analysis, never through floating point.
class Scalar {
public:
  Scalar() : a_(0), b_(0) {}
  explicit Scalar(Rational rational_part) : a_(std::move(rational_part)), b_(0) {}
  Scalar(Rational rational_part, Rational sqrt2_part)
      : a_(std::move(rational_part)), b_(std::move(sqrt2_part)) {}

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(Rational(1)); }
  static Scalar sqrt2() { return Scalar(Rational(0), Rational(1)); }
  /// 1/sqrt(2), the normalization factor of a two-coordinate difference vector.
  static Scalar inv_sqrt2() { return Scalar(Rational(0), Rational(1, 2)); }
  static Scalar from_int(long v) { return Scalar(Rational(v)); }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  /// Exact sign in {-1, 0, +1}. Mixed-sign coefficients are decided by
  /// comparing a^2 against 2 b^2, which is legitimate because sqrt(2) is
  /// irrational so a + b*sqrt(2) never vanishes unless a = b = 0.
  int sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sa == 0 && sb == 0) return 0;
    if (sa >= 0 && sb >= 0) return 1;
    if (sa <= 0 && sb <= 0) return -1;
    // Opposite strict signs: |a| vs sqrt(2)|b| decides.
    const Rational a2 = a_ * a_;
    const Rational b2_twice = 2 * b_ * b_;
    if (a2 == b2_twice) {
      // Would force sqrt(2) = |a/b|, impossible for nonzero rationals.
      return sa > 0 ? 1 : -1;
    }
    const bool a_wins = a2 > b2_twice;
    return a_wins ? sa : sb;
  }

  Scalar operator-() const { return Scalar(-a_, -b_); }

  Scalar& operator+=(const Scalar& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    const Rational na = a_ * o.a_ + 2 * b_ * o.b_;
    const Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = na;
    b_ = nb;
    return *this;
  }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }

  /// Multiplicative inverse via the conjugate a - b*sqrt(2). The norm
  /// a^2 - 2 b^2 is a nonzero rational whenever the element is nonzero.
  Scalar inverse() const {
    if (is_zero()) throw computation_error("division by zero in Q(sqrt 2)");
    const Rational norm = a_ * a_ - 2 * b_ * b_;
    return Scalar(a_ / norm, -b_ / norm);
  }

  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    if (s.b_ == 0) return os << s.a_;
    if (s.a_ == 0) return os << s.b_ << "*sqrt2";
    return os << s.a_ << (s.b_ > 0 ? "+" : "") << s.b_ << "*sqrt2";
  }

private:
  Rational a_;
  Rational b_;
};

}  // namespace pinfloer
