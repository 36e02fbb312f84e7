#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pinfloer/homology.hpp"
#include "pinfloer/signs.hpp"

namespace pinfloer {

// Toroidal grid presentation of an oriented link. Columns and rows are
// numbered 0..n-1. Markings live in the unit cells: column c carries its O
// marking in the cell of row o_rows[c] and its X marking in the cell of row
// x_rows[c]. Both row lists are permutations (one marking of each kind per
// row), and no cell carries both markings at once.
struct GridDiagram {
  int n = 0;
  std::vector<int> o_rows;
  std::vector<int> x_rows;
};

/// Validates and packs a diagram. Throws input_error unless both lists are
/// permutations of 0..n-1 with n >= 2 that disagree in every column.
GridDiagram grid_from_permutations(int n, std::vector<int> o_rows,
                                   std::vector<int> x_rows);

/// Number of link components: cycles of the column-to-column successor map
/// that follows a component through one O and one X marking.
int component_count(const GridDiagram& g);

/// Component of each column, numbered 0.. in order of first appearance.
std::vector<int> column_components(const GridDiagram& g);

// A generator of the grid complex: one point on each vertical line, rows[c]
// being the row of the point on line c, distinct in every column. States sit
// at line crossings while markings sit in the cells between them.
using GridState = std::vector<int>;

/// All n! states in lexicographic order.
std::vector<GridState> all_grid_states(int n);

/// Position of a state in the lexicographic order, without enumerating.
int grid_state_rank(const GridState& s);

/// Homological grading of a state, measured against the O markings.
int maslov_grading(const GridDiagram& g, const GridState& s);

/// The same count measured against the X markings.
int maslov_grading_x(const GridDiagram& g, const GridState& s);

/// Twice the filtration grading, kept doubled so it stays integral for
/// links of every component count.
int alexander_twice(const GridDiagram& g, const GridState& s);

// Signs relating the Pin lifts of states across a column transposition.
// Matches permutation_transport_sign from the Clifford layer while staying
// cheap enough to call once per differential entry: lifts are cached as
// integer blade vectors (the 1/sqrt(2) normalizations are scaled away) for
// grids small enough to enumerate, and rebuilt per query above that.
class StateTransport {
public:
  explicit StateTransport(int n);

  /// Sign c with lift(s) * lift((p q)) = c * lift(s') where s' is s with the
  /// entries at p and q exchanged. Requires 0 <= p < q < n.
  int sign(const GridState& s, int p, int q) const;

private:
  std::vector<long long> lift_of(const GridState& s) const;

  int n_;
  std::vector<std::vector<long long>> cached_;
};

enum class GridFlavor { tilde, minus };

/// One term of a differential: coeff times a monomial in the per-column
/// variables U_0..U_{n-1} applied to the state of the given rank. The
/// exponent list is empty in the tilde flavor.
struct GridEntry {
  int target = 0;
  long long coeff = 0;
  std::vector<std::uint8_t> u_exponents;
};

/// Differential of one state, computed directly from the diagram: both
/// rectangles of every column pair, kept when their interior misses the
/// state and their cells miss the required markings (all markings for
/// tilde, the X markings for minus, with U exponents recording covered O
/// cells). Each kept rectangle contributes its stored sign times the
/// transport sign of the column swap. Entries come back merged and sorted.
std::vector<GridEntry> state_boundary(const GridDiagram& g,
                                      const SignAssignment& signs,
                                      GridFlavor flavor, const GridState& s,
                                      const StateTransport& transport);

/// The whole signed complex, states in lexicographic order.
struct GridComplex {
  GridDiagram diagram;
  GridFlavor flavor = GridFlavor::tilde;
  std::vector<GridState> states;
  std::vector<int> maslov;
  std::vector<int> alexander2;
  std::vector<std::vector<GridEntry>> boundary;
};

GridComplex grid_complex(const GridDiagram& g, const SignAssignment& signs,
                         GridFlavor flavor);

/// First failing coefficient of the squared differential, if any: the
/// composite (source, target, monomial) whose total does not vanish.
struct SquareDefect {
  int source = 0;
  int target = 0;
  std::vector<std::uint8_t> u_exponents;
  long long value = 0;
};

std::optional<SquareDefect> boundary_square_defect(const GridComplex& c);

/// Signed products of the two legs of the thin annulus factorizations at
/// one state and one column, in the auxiliary complex that ignores markings
/// entirely. The vertical annulus is the column itself; the horizontal one
/// runs through the row of the column's O marking, so the two share that
/// marking and their diagonal contributions cancel exactly when the
/// products are -1 and +1.
struct AnnulusCancellation {
  int state = 0;
  int column = 0;
  int vertical_product = 0;
  int horizontal_product = 0;
};

std::vector<AnnulusCancellation> annulus_cancellation_report(
    const GridDiagram& g, const SignAssignment& signs);

/// Whether columns c and c+1 (cyclically) bound disjoint or strictly nested
/// marking intervals, so exchanging them is a link isotopy.
bool can_commute_columns(const GridDiagram& g, int c);

/// Exchanges columns c and c+1. Throws input_error when not permitted.
GridDiagram commute_columns(const GridDiagram& g, int c);

bool can_commute_rows(const GridDiagram& g, int r);
GridDiagram commute_rows(const GridDiagram& g, int r);

/// Splits column c at its X marking into a 2x2 corner, growing the grid by
/// one column and one row. The new column c keeps an O over an X corner
/// pair; the displaced markings shift one slot right and up.
GridDiagram stabilize_at_x(const GridDiagram& g, int c);

/// Same splitting with the roles of O and X exchanged.
GridDiagram stabilize_at_o(const GridDiagram& g, int c);

/// Undoes a stabilization whose corner sits in columns c, c+1, recognizing
/// either marking flavor. Returns the smaller diagram, or nothing when the
/// corner pattern is absent.
std::optional<GridDiagram> destabilize(const GridDiagram& g, int c);

/// Homology of the fully blocked complex, bucketed by the doubled
/// filtration grading and resolved along the homological grading. While
/// assembling, every differential entry is checked to drop the homological
/// grading by one and preserve the filtration grading; a leak throws
/// computation_error.
///
/// The buckets are independent, so up to `threads` of them are reduced
/// concurrently. Results are merged in a fixed grading order and each
/// reduction is a pure function of its bucket, hence the output never
/// depends on the thread count. Throws input_error when threads < 1.
HomologySummary tilde_homology(const GridDiagram& g,
                               const SignAssignment& signs, int threads = 1);

/// Reads the versioned text format:
///
///   # pinfloer-grid v1
///   n=5
///   O: 2 3 4 5 1
///   X: 5 1 2 3 4
///
/// Rows are 1-indexed in files, 0-indexed in memory. Throws input_error on
/// any deviation.
GridDiagram read_grid(std::istream& in);

void write_grid(std::ostream& out, const GridDiagram& g);

}  // namespace pinfloer
