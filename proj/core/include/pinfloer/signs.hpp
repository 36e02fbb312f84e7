#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pinfloer {

// Lattice point (or unit cell, addressed by its lower-left corner) on the
// n by n torus.  Columns come first everywhere in this module.
struct GridPoint {
  int col = 0;
  int row = 0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

// An oriented rectangle on the torus grid.  The column interval runs from a
// to c with wrap-around and the row interval from b to d, so the footprint is
// the product of the two half-open cyclic intervals.  The direction bit picks
// which diagonal is the initial corner pair: dir 0 means {(a,b),(c,d)} starts
// and {(a,d),(c,b)} ends, dir 1 the other way round.
struct DirectedRectangle {
  int n = 2;
  int a = 0;
  int c = 1;
  int b = 0;
  int d = 1;
  int dir = 0;

  DirectedRectangle() = default;
  DirectedRectangle(int n, int a, int c, int b, int d, int dir);

  std::pair<GridPoint, GridPoint> initial_corners() const;
  std::pair<GridPoint, GridPoint> terminal_corners() const;
  std::vector<GridPoint> footprint() const;
  DirectedRectangle reversed() const;

  friend bool operator==(const DirectedRectangle&,
                         const DirectedRectangle&) = default;
  friend auto operator<=>(const DirectedRectangle&,
                          const DirectedRectangle&) = default;
};

// One parity equation over Z/2 on the log-signs of rectangles, s(r) with
// S(r) = (-1)^{s(r)}.  Variables index into the canonical rectangle order of
// the owning system.
struct SignConstraint {
  std::string kind;  // "square", "horizontal-annulus", or "vertical-annulus"
  std::vector<int> variables;
  int rhs = 0;

  friend bool operator==(const SignConstraint&, const SignConstraint&) = default;
};

struct SignSystem {
  int n = 2;
  std::vector<DirectedRectangle> rectangles;  // canonical order, index = var
  std::vector<SignConstraint> equations;
};

struct SignAssignment {
  int n = 2;
  std::map<DirectedRectangle, int> signs;  // values are +1 or -1
};

// Complete duplicate-free listing in canonical order; 2 [n(n-1)]^2 entries.
std::vector<DirectedRectangle> enumerate_rectangles(int n);

// Brute force over all composable ordered rectangle pairs, grouped by
// (direction, initial corners, terminal corners, total multiplicity region).
// A pair composes only within one calculus, two moves or two formal
// reverses, and groups are likewise kept per calculus; crossing the two
// worlds over-determines the system (mixed chains break it at n = 2,
// cross-identified strip factorizations at n = 4).  Thin annulus groups
// contribute one polarity equation per decomposition (horizontal 0,
// vertical 1); every other group contributes one equation per unordered
// pair of distinct decompositions, with right-hand side matched to the
// relative sign of the two transposition transports so that composites
// cancel once transports are taken into account.
SignSystem build_constraints(int n);

// Gaussian elimination over Z/2 on build_constraints(n).  Free variables take
// the seed bit (0 by default; 1 gives the alternative gauge used by the
// equivalence tests).  Throws computation_error with a certificate equation
// if the system is inconsistent.
SignAssignment construct_sign_assignment(int n, bool free_ones = false);

// Exhaustively rechecks every constraint; violations are returned, not thrown.
std::vector<SignConstraint> verify_sign_assignment(const SignAssignment& s);

// Text round trip: a version header, "n=<size>", then one line per rectangle
// "a c b d dir sign" in canonical order.
void write_sign_assignment(std::ostream& out, const SignAssignment& s);
SignAssignment read_sign_assignment(std::istream& in);

}  // namespace pinfloer
