#include "pinfloer/grid.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>

#include "pinfloer/errors.hpp"

namespace pinfloer {

namespace {

constexpr const char* kGridHeader = "# pinfloer-grid v1";

void check_rows(int n, const std::vector<int>& rows, const char* what) {
  if (static_cast<int>(rows.size()) != n) {
    throw input_error(std::string(what) + " list must have one row per column");
  }
  std::vector<char> seen(n, 0);
  for (int r : rows) {
    if (r < 0 || r >= n || seen[r]) {
      throw input_error(std::string(what) +
                        " rows must be a permutation of 0..n-1");
    }
    seen[r] = 1;
  }
}

void check_state(int n, const GridState& s) {
  if (static_cast<int>(s.size()) != n) {
    throw input_error("state size does not match the grid");
  }
  std::vector<char> seen(n, 0);
  for (int r : s) {
    if (r < 0 || r >= n || seen[r]) {
      throw input_error("state rows must be a permutation of 0..n-1");
    }
    seen[r] = 1;
  }
}

std::vector<int> inverse_rows(const std::vector<int>& rows) {
  std::vector<int> inv(rows.size());
  for (int c = 0; c < static_cast<int>(rows.size()); ++c) inv[rows[c]] = c;
  return inv;
}

// Doubled coordinates keep states and markings off each other's grid lines:
// states sit at even positions, marking cells at odd ones.
std::vector<std::pair<int, int>> doubled_state(const GridState& s) {
  std::vector<std::pair<int, int>> pts;
  pts.reserve(s.size());
  for (int c = 0; c < static_cast<int>(s.size()); ++c) {
    pts.push_back({2 * c, 2 * s[c]});
  }
  return pts;
}

std::vector<std::pair<int, int>> doubled_cells(const std::vector<int>& rows) {
  std::vector<std::pair<int, int>> pts;
  pts.reserve(rows.size());
  for (int c = 0; c < static_cast<int>(rows.size()); ++c) {
    pts.push_back({2 * c + 1, 2 * rows[c] + 1});
  }
  return pts;
}

// Number of ordered pairs (a, b) with b strictly north-east of a.
long dominations(const std::vector<std::pair<int, int>>& a,
                 const std::vector<std::pair<int, int>>& b) {
  long total = 0;
  for (const auto& p : a) {
    for (const auto& q : b) {
      if (q.first > p.first && q.second > p.second) ++total;
    }
  }
  return total;
}

// Planar point count of the grading recipe: I(x,x) - I(x,m) - I(m,x) +
// I(m,m) + 1 against a marking family m.
int maslov_against(const GridState& s, const std::vector<int>& rows) {
  const auto xs = doubled_state(s);
  const auto ms = doubled_cells(rows);
  const long value = dominations(xs, xs) - dominations(xs, ms) -
                     dominations(ms, xs) + dominations(ms, ms) + 1;
  return static_cast<int>(value);
}

int inversion_count(const GridState& s) {
  int count = 0;
  for (int i = 0; i < static_cast<int>(s.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(s.size()); ++j) {
      if (s[i] > s[j]) ++count;
    }
  }
  return count;
}

// Same pass structure as the Clifford layer's bubble factorization, so the
// cached lifts realize the identical section of the double cover.
std::vector<int> bubble_positions(GridState s) {
  const int n = static_cast<int>(s.size());
  std::vector<int> word;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i + 1 < n; ++i) {
      if (s[i] > s[i + 1]) {
        std::swap(s[i], s[i + 1]);
        word.push_back(i);
        moved = true;
      }
    }
  }
  return word;
}

// Parity of moving e_t leftward through the ascending blade B.
int append_sign(std::uint32_t blade, int t) {
  const std::uint32_t higher = blade >> (t + 1);
  return (std::popcount(higher) & 1) ? -1 : 1;
}

// acc <- acc * (e_a - e_b), blades as bitmasks with integer coefficients.
std::vector<long long> times_vector_factor(const std::vector<long long>& acc,
                                           int a, int b) {
  std::vector<long long> out(acc.size(), 0);
  for (std::uint32_t blade = 0; blade < acc.size(); ++blade) {
    const long long c = acc[blade];
    if (c == 0) continue;
    out[blade ^ (1u << a)] += c * append_sign(blade, a);
    out[blade ^ (1u << b)] -= c * append_sign(blade, b);
  }
  return out;
}

// Memory for one cached lift table doubles per extra column; past this the
// per-query rebuild is still exact, just slower.
constexpr int kTransportCacheLimit = 8;

}  // namespace

GridDiagram grid_from_permutations(int n, std::vector<int> o_rows,
                                   std::vector<int> x_rows) {
  if (n < 2) throw input_error("grid size must be at least 2");
  check_rows(n, o_rows, "O");
  check_rows(n, x_rows, "X");
  for (int c = 0; c < n; ++c) {
    if (o_rows[c] == x_rows[c]) {
      throw input_error("column " + std::to_string(c) +
                        " has both markings in one cell");
    }
  }
  GridDiagram g;
  g.n = n;
  g.o_rows = std::move(o_rows);
  g.x_rows = std::move(x_rows);
  return g;
}

std::vector<int> column_components(const GridDiagram& g) {
  const auto x_col = inverse_rows(g.x_rows);
  std::vector<int> comp(g.n, -1);
  int next = 0;
  for (int c = 0; c < g.n; ++c) {
    if (comp[c] != -1) continue;
    int cur = c;
    while (comp[cur] == -1) {
      comp[cur] = next;
      cur = x_col[g.o_rows[cur]];
    }
    ++next;
  }
  return comp;
}

int component_count(const GridDiagram& g) {
  const auto comp = column_components(g);
  return 1 + *std::max_element(comp.begin(), comp.end());
}

std::vector<GridState> all_grid_states(int n) {
  GridState s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  std::vector<GridState> out;
  do {
    out.push_back(s);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

int grid_state_rank(const GridState& s) {
  const int n = static_cast<int>(s.size());
  long long factorial = 1;
  for (int i = 2; i < n; ++i) factorial *= i;
  long long rank = 0;
  for (int i = 0; i < n - 1; ++i) {
    int smaller_later = 0;
    for (int j = i + 1; j < n; ++j) {
      if (s[j] < s[i]) ++smaller_later;
    }
    rank += smaller_later * factorial;
    factorial /= (n - 1 - i);
  }
  return static_cast<int>(rank);
}

int maslov_grading(const GridDiagram& g, const GridState& s) {
  check_state(g.n, s);
  return maslov_against(s, g.o_rows);
}

int maslov_grading_x(const GridDiagram& g, const GridState& s) {
  check_state(g.n, s);
  return maslov_against(s, g.x_rows);
}

int alexander_twice(const GridDiagram& g, const GridState& s) {
  check_state(g.n, s);
  const int spread = g.n - component_count(g);
  return maslov_against(s, g.o_rows) - maslov_against(s, g.x_rows) - spread;
}

StateTransport::StateTransport(int n) : n_(n) {
  if (n < 2) throw input_error("transport table needs size at least 2");
  if (n > kTransportCacheLimit) return;
  const auto states = all_grid_states(n);
  cached_.reserve(states.size());
  for (const auto& s : states) cached_.push_back(lift_of(s));
}

std::vector<long long> StateTransport::lift_of(const GridState& s) const {
  std::vector<long long> acc(std::size_t{1} << n_, 0);
  acc[0] = 1;
  const auto word = bubble_positions(s);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    acc = times_vector_factor(acc, *it, *it + 1);
  }
  return acc;
}

int StateTransport::sign(const GridState& s, int p, int q) const {
  check_state(n_, s);
  if (p < 0 || q <= p || q >= n_) {
    throw input_error("transport positions must satisfy 0 <= p < q < n");
  }
  GridState t = s;
  std::swap(t[p], t[q]);

  const std::vector<long long>* source = nullptr;
  const std::vector<long long>* target = nullptr;
  std::vector<long long> source_own, target_own;
  if (!cached_.empty()) {
    source = &cached_[grid_state_rank(s)];
    target = &cached_[grid_state_rank(t)];
  } else {
    source_own = lift_of(s);
    target_own = lift_of(t);
    source = &source_own;
    target = &target_own;
  }

  std::vector<long long> lhs = times_vector_factor(*source, p, q);
  std::vector<long long> rhs = *target;
  // The integer lifts carry sqrt(2)^(inversion count), so one side needs a
  // compensating power of two before they can be compared.
  const int half_gap = (1 + inversion_count(s) - inversion_count(t)) / 2;
  if (half_gap >= 0) {
    for (auto& v : rhs) v <<= half_gap;
  } else {
    for (auto& v : lhs) v <<= -half_gap;
  }

  int result = 0;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (rhs[i] == 0) continue;
    if (lhs[i] == rhs[i]) result = 1;
    if (lhs[i] == -rhs[i]) result = -1;
    break;
  }
  if (result == 0) {
    throw computation_error("transport lift comparison failed");
  }
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (lhs[i] != result * rhs[i]) {
      throw computation_error("transport lift comparison failed");
    }
  }
  return result;
}

namespace {

// Whether the open interior of the rectangle contains a point of the state.
// Corners sit on the boundary, so only strictly interior lines matter.
bool interior_misses_state(const GridState& s, const DirectedRectangle& r) {
  const int n = r.n;
  const int w = (r.c - r.a + n) % n;
  const int h = (r.d - r.b + n) % n;
  for (int k = 0; k < n; ++k) {
    const int dc = (k - r.a + n) % n;
    if (dc == 0 || dc >= w) continue;
    const int dr = (s[k] - r.b + n) % n;
    if (dr > 0 && dr < h) return false;
  }
  return true;
}

bool covers_cell(const DirectedRectangle& r, int col, int row) {
  const int n = r.n;
  return (col - r.a + n) % n < (r.c - r.a + n) % n &&
         (row - r.b + n) % n < (r.d - r.b + n) % n;
}

int stored_sign(const SignAssignment& signs, const DirectedRectangle& r) {
  const auto it = signs.signs.find(r);
  if (it == signs.signs.end()) {
    throw computation_error("sign assignment is missing a rectangle");
  }
  return it->second;
}

}  // namespace

std::vector<GridEntry> state_boundary(const GridDiagram& g,
                                      const SignAssignment& signs,
                                      GridFlavor flavor, const GridState& s,
                                      const StateTransport& transport) {
  check_state(g.n, s);
  if (signs.n != g.n) {
    throw input_error("sign assignment size does not match the grid");
  }
  const int n = g.n;
  std::map<std::pair<int, std::vector<std::uint8_t>>, long long> merged;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      GridState t = s;
      std::swap(t[p], t[q]);
      const int transport_sign = transport.sign(s, p, q);
      const int target = grid_state_rank(t);
      const DirectedRectangle rects[2] = {
          DirectedRectangle(n, p, q, s[p], s[q], 0),
          DirectedRectangle(n, q, p, s[q], s[p], 0)};
      for (const auto& r : rects) {
        if (!interior_misses_state(s, r)) continue;
        bool blocked = false;
        for (int c = 0; c < n && !blocked; ++c) {
          if (covers_cell(r, c, g.x_rows[c])) blocked = true;
          if (flavor == GridFlavor::tilde && covers_cell(r, c, g.o_rows[c])) {
            blocked = true;
          }
        }
        if (blocked) continue;
        std::vector<std::uint8_t> exps;
        if (flavor == GridFlavor::minus) {
          exps.assign(n, 0);
          for (int c = 0; c < n; ++c) {
            if (covers_cell(r, c, g.o_rows[c])) exps[c] = 1;
          }
        }
        merged[{target, std::move(exps)}] +=
            static_cast<long long>(transport_sign) * stored_sign(signs, r);
      }
    }
  }
  std::vector<GridEntry> out;
  for (const auto& [key, coeff] : merged) {
    if (coeff == 0) continue;
    out.push_back({key.first, coeff, key.second});
  }
  return out;
}

GridComplex grid_complex(const GridDiagram& g, const SignAssignment& signs,
                         GridFlavor flavor) {
  GridComplex complex;
  complex.diagram = g;
  complex.flavor = flavor;
  complex.states = all_grid_states(g.n);
  const StateTransport transport(g.n);
  complex.maslov.reserve(complex.states.size());
  complex.alexander2.reserve(complex.states.size());
  complex.boundary.reserve(complex.states.size());
  for (const auto& s : complex.states) {
    complex.maslov.push_back(maslov_grading(g, s));
    complex.alexander2.push_back(alexander_twice(g, s));
    complex.boundary.push_back(state_boundary(g, signs, flavor, s, transport));
  }
  return complex;
}

std::optional<SquareDefect> boundary_square_defect(const GridComplex& c) {
  const int states = static_cast<int>(c.states.size());
  for (int source = 0; source < states; ++source) {
    std::map<std::pair<int, std::vector<std::uint8_t>>, long long> total;
    for (const auto& first : c.boundary[source]) {
      for (const auto& second : c.boundary[first.target]) {
        std::vector<std::uint8_t> exps = first.u_exponents;
        for (std::size_t i = 0; i < second.u_exponents.size(); ++i) {
          exps[i] = static_cast<std::uint8_t>(exps[i] + second.u_exponents[i]);
        }
        total[{second.target, std::move(exps)}] += first.coeff * second.coeff;
      }
    }
    for (const auto& [key, value] : total) {
      if (value != 0) {
        return SquareDefect{source, key.first, key.second, value};
      }
    }
  }
  return std::nullopt;
}

std::vector<AnnulusCancellation> annulus_cancellation_report(
    const GridDiagram& g, const SignAssignment& signs) {
  if (signs.n != g.n) {
    throw input_error("sign assignment size does not match the grid");
  }
  const int n = g.n;
  const StateTransport transport(n);
  const auto states = all_grid_states(n);
  const auto row_col = [](const GridState& s, int row) {
    return static_cast<int>(std::find(s.begin(), s.end(), row) - s.begin());
  };
  std::vector<AnnulusCancellation> report;
  report.reserve(states.size() * n);
  for (int si = 0; si < static_cast<int>(states.size()); ++si) {
    const GridState& s = states[si];
    for (int a = 0; a < n; ++a) {
      AnnulusCancellation item;
      item.state = si;
      item.column = a;

      // The column itself, split at the two state points it meets.
      const int a2 = (a + 1) % n;
      GridState mid = s;
      std::swap(mid[a], mid[a2]);
      const int lo = std::min(a, a2);
      const int hi = std::max(a, a2);
      const DirectedRectangle up(n, a, a2, s[a], s[a2], 0);
      const DirectedRectangle down(n, a, a2, s[a2], s[a], 0);
      item.vertical_product = stored_sign(signs, up) *
                              stored_sign(signs, down) *
                              transport.sign(s, lo, hi) *
                              transport.sign(mid, lo, hi);

      // The row of this column's O marking, split the same way.
      const int row = g.o_rows[a];
      const int row2 = (row + 1) % n;
      const int p = row_col(s, row);
      const int q = row_col(s, row2);
      GridState across = s;
      std::swap(across[p], across[q]);
      const int plo = std::min(p, q);
      const int phi = std::max(p, q);
      const DirectedRectangle east(n, p, q, row, row2, 0);
      const DirectedRectangle west(n, q, p, row, row2, 0);
      item.horizontal_product = stored_sign(signs, east) *
                                stored_sign(signs, west) *
                                transport.sign(s, plo, phi) *
                                transport.sign(across, plo, phi);
      report.push_back(item);
    }
  }
  return report;
}

namespace {

// Planar span of the two marking rows (or columns) of one line.
std::pair<int, int> marking_interval(int u, int v) {
  return {std::min(u, v), std::max(u, v)};
}

bool intervals_commute(std::pair<int, int> s, std::pair<int, int> t) {
  if (s.first == t.first || s.first == t.second || s.second == t.first ||
      s.second == t.second) {
    return false;
  }
  const bool disjoint = s.second < t.first || t.second < s.first;
  const bool nested = (s.first < t.first && t.second < s.second) ||
                      (t.first < s.first && s.second < t.second);
  return disjoint || nested;
}

void check_line_index(int n, int c) {
  if (c < 0 || c >= n) throw input_error("line index out of range");
}

}  // namespace

bool can_commute_columns(const GridDiagram& g, int c) {
  check_line_index(g.n, c);
  const int c2 = (c + 1) % g.n;
  return intervals_commute(marking_interval(g.o_rows[c], g.x_rows[c]),
                           marking_interval(g.o_rows[c2], g.x_rows[c2]));
}

GridDiagram commute_columns(const GridDiagram& g, int c) {
  if (!can_commute_columns(g, c)) {
    throw input_error("columns cannot be exchanged here");
  }
  GridDiagram out = g;
  const int c2 = (c + 1) % g.n;
  std::swap(out.o_rows[c], out.o_rows[c2]);
  std::swap(out.x_rows[c], out.x_rows[c2]);
  return out;
}

bool can_commute_rows(const GridDiagram& g, int r) {
  check_line_index(g.n, r);
  const auto o_col = inverse_rows(g.o_rows);
  const auto x_col = inverse_rows(g.x_rows);
  const int r2 = (r + 1) % g.n;
  return intervals_commute(marking_interval(o_col[r], x_col[r]),
                           marking_interval(o_col[r2], x_col[r2]));
}

GridDiagram commute_rows(const GridDiagram& g, int r) {
  if (!can_commute_rows(g, r)) {
    throw input_error("rows cannot be exchanged here");
  }
  GridDiagram out = g;
  const int r2 = (r + 1) % g.n;
  for (int c = 0; c < g.n; ++c) {
    if (out.o_rows[c] == r) {
      out.o_rows[c] = r2;
    } else if (out.o_rows[c] == r2) {
      out.o_rows[c] = r;
    }
    if (out.x_rows[c] == r) {
      out.x_rows[c] = r2;
    } else if (out.x_rows[c] == r2) {
      out.x_rows[c] = r;
    }
  }
  return out;
}

namespace {

// Splits column c of the diagram at the marking row j, the new corner pair
// landing in the first marking family and the survivor in the second.
GridDiagram stabilize_generic(const GridDiagram& g, int c,
                              const std::vector<int>& split_rows,
                              const std::vector<int>& other_rows,
                              bool split_is_x) {
  check_line_index(g.n, c);
  const int n = g.n;
  const int j = split_rows[c];
  const auto new_col = [&](int k) { return k < c ? k : k + 1; };
  const auto new_row = [&](int r) { return r < j ? r : r + 1; };
  std::vector<int> split2(n + 1), other2(n + 1);
  for (int k = 0; k < n; ++k) {
    if (k == c) continue;
    split2[new_col(k)] = new_row(split_rows[k]);
    other2[new_col(k)] = new_row(other_rows[k]);
  }
  split2[c] = j + 1;
  other2[c] = j;
  split2[c + 1] = j;
  other2[c + 1] = new_row(other_rows[c]);
  if (split_is_x) {
    return grid_from_permutations(n + 1, other2, split2);
  }
  return grid_from_permutations(n + 1, split2, other2);
}

}  // namespace

GridDiagram stabilize_at_x(const GridDiagram& g, int c) {
  return stabilize_generic(g, c, g.x_rows, g.o_rows, true);
}

GridDiagram stabilize_at_o(const GridDiagram& g, int c) {
  return stabilize_generic(g, c, g.o_rows, g.x_rows, false);
}

std::optional<GridDiagram> destabilize(const GridDiagram& g, int c) {
  if (g.n < 3 || c < 0 || c + 1 >= g.n) return std::nullopt;
  const int n = g.n;
  const auto matches = [&](const std::vector<int>& split,
                           const std::vector<int>& other) {
    return split[c] == other[c] + 1 && split[c + 1] == other[c];
  };
  int j;
  if (matches(g.x_rows, g.o_rows)) {
    j = g.o_rows[c];
  } else if (matches(g.o_rows, g.x_rows)) {
    j = g.x_rows[c];
  } else {
    return std::nullopt;
  }
  const auto old_row = [&](int r) { return r <= j ? r : r - 1; };
  std::vector<int> o1(n - 1), x1(n - 1);
  for (int k = 0; k < n; ++k) {
    if (k == c) continue;
    const int dst = k < c ? k : k - 1;
    o1[dst] = old_row(g.o_rows[k]);
    x1[dst] = old_row(g.x_rows[k]);
  }
  return grid_from_permutations(n - 1, o1, x1);
}

HomologySummary tilde_homology(const GridDiagram& g,
                               const SignAssignment& signs, int threads) {
  if (threads < 1) throw input_error("thread count must be positive");
  const GridComplex complex = grid_complex(g, signs, GridFlavor::tilde);
  const int states = static_cast<int>(complex.states.size());

  std::map<int, std::vector<int>> buckets;
  for (int i = 0; i < states; ++i) buckets[complex.alexander2[i]].push_back(i);

  struct Block {
    int a2 = 0;
    int min_m = 0;
    IntChainComplex chain;
    std::vector<HomologyGroup> groups;
    std::exception_ptr failure;
  };
  std::vector<Block> blocks;
  blocks.reserve(buckets.size());
  for (const auto& [a2, members] : buckets) {
    int min_m = complex.maslov[members.front()];
    int max_m = min_m;
    for (int i : members) {
      min_m = std::min(min_m, complex.maslov[i]);
      max_m = std::max(max_m, complex.maslov[i]);
    }
    const int degrees = max_m - min_m + 1;
    IntChainComplex chain;
    chain.ranks.assign(degrees, 0);
    std::vector<int> position(states, -1);
    for (int i : members) {
      position[i] = chain.ranks[complex.maslov[i] - min_m]++;
    }
    chain.boundaries.clear();
    for (int k = 0; k + 1 < degrees; ++k) {
      chain.boundaries.push_back(
          SparseIntMatrix(chain.ranks[k], chain.ranks[k + 1]));
    }
    for (int i : members) {
      const int degree = complex.maslov[i] - min_m;
      for (const auto& entry : complex.boundary[i]) {
        if (complex.alexander2[entry.target] != a2) {
          throw computation_error("differential leaks filtration grading");
        }
        if (complex.maslov[entry.target] != complex.maslov[i] - 1) {
          throw computation_error("differential entry does not drop the"
                                  " homological grading by one");
        }
        chain.boundaries[degree - 1].add(position[entry.target], position[i],
                                         Int(entry.coeff));
      }
    }
    blocks.push_back({a2, min_m, std::move(chain), {}, nullptr});
  }

  // The blocks are pairwise independent, so reducing them concurrently and
  // merging in block order yields the same summary for every worker count.
  const auto reduce = [&](Block& block) {
    try {
      block.groups = homology_of_complex(block.chain);
    } catch (...) {
      block.failure = std::current_exception();
    }
  };
  const int workers =
      std::min<int>(threads, static_cast<int>(blocks.size()));
  if (workers <= 1) {
    for (Block& block : blocks) reduce(block);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < blocks.size();
             i = next.fetch_add(1)) {
          reduce(blocks[i]);
        }
      });
    }
    for (std::thread& worker : pool) worker.join();
  }

  HomologySummary summary;
  for (const Block& block : blocks) {
    if (block.failure) std::rethrow_exception(block.failure);
    for (int k = 0; k < static_cast<int>(block.groups.size()); ++k) {
      if (block.groups[k].free_rank == 0 && block.groups[k].torsion.empty()) {
        continue;
      }
      summary.groups[{block.min_m + k, block.a2}] = block.groups[k];
    }
  }
  return summary;
}

GridDiagram read_grid(std::istream& in) {
  std::string line;
  const auto next_line = [&]() {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line() || line != kGridHeader) {
    throw input_error("grid file must start with \"" +
                      std::string(kGridHeader) + "\"");
  }
  if (!next_line() || line.rfind("n=", 0) != 0) {
    throw input_error("grid file is missing the n=<size> line");
  }
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw input_error("malformed grid size line: " + line);
  }
  if (n < 2) throw input_error("grid size must be at least 2");
  const auto read_rows = [&](const char* tag) {
    if (!next_line() || line.rfind(tag, 0) != 0) {
      throw input_error(std::string("grid file is missing the ") + tag +
                        " line");
    }
    std::istringstream ls(line.substr(2));
    std::vector<int> rows;
    int value = 0;
    while (ls >> value) rows.push_back(value - 1);
    if (!ls.eof()) throw input_error("malformed marking line: " + line);
    return rows;
  };
  const auto o_rows = read_rows("O:");
  const auto x_rows = read_rows("X:");
  if (next_line()) {
    throw input_error("unexpected trailing line: " + line);
  }
  return grid_from_permutations(n, o_rows, x_rows);
}

void write_grid(std::ostream& out, const GridDiagram& g) {
  out << kGridHeader << "\n" << "n=" << g.n << "\n";
  const auto write_rows = [&](const char* tag, const std::vector<int>& rows) {
    out << tag;
    for (int r : rows) out << ' ' << r + 1;
    out << "\n";
  };
  write_rows("O:", g.o_rows);
  write_rows("X:", g.x_rows);
}

}  // namespace pinfloer
