#include "pinfloer/signs.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pinfloer/clifford.hpp"
#include "pinfloer/errors.hpp"

namespace pinfloer {

namespace {

constexpr const char* kSignsHeader = "# pinfloer-signs v1";

void check_size(int n) {
  if (n < 2) throw input_error("grid size must be at least 2");
}

void append_u16(std::string& s, int v) {
  s.push_back(static_cast<char>((v >> 8) & 0xff));
  s.push_back(static_cast<char>(v & 0xff));
}

// Cached data for one rectangle: sorted corner pairs, sorted footprint cell
// ids, and the column transposition it induces.
struct RectInfo {
  std::array<GridPoint, 2> init;
  std::array<GridPoint, 2> term;
  std::vector<int> cells;
  int col_lo = 0;
  int col_hi = 0;
  int a = 0, c = 0, b = 0, d = 0;
  int dir = 0;
};

std::array<GridPoint, 2> sort_pair(std::pair<GridPoint, GridPoint> p) {
  if (p.second < p.first) std::swap(p.first, p.second);
  return {p.first, p.second};
}

bool pair_contains(const std::array<GridPoint, 2>& pair, const GridPoint& q) {
  return pair[0] == q || pair[1] == q;
}

// A chain is two moves or two formal reverses, never a mixture: pairing a
// move with a reverse encodes no cancellation, and admitting such pairs makes
// the system provably inconsistent already at n = 2.  Beyond the direction
// match, every initial corner of r2 must be delivered by r1 or lie clear of
// r1's rows and columns, since a state holds one point per row and column.
bool composable(const RectInfo& r1, const RectInfo& r2) {
  if (r1.dir != r2.dir) return false;
  for (const GridPoint& q : r2.init) {
    if (pair_contains(r1.term, q)) continue;
    if (q.col == r1.a || q.col == r1.c || q.row == r1.b || q.row == r1.d) {
      return false;
    }
  }
  return true;
}

std::string describe(const DirectedRectangle& r) {
  std::ostringstream os;
  os << "(" << r.a << " " << r.c << " " << r.b << " " << r.d << " " << r.dir
     << ")";
  return os.str();
}

// Thin annulus classification of a composite region: 0 none, 1 horizontal
// (one full row), 2 vertical (one full column).
int annulus_type(const std::vector<std::pair<int, int>>& domain, int n) {
  if (static_cast<int>(domain.size()) != n) return 0;
  for (const auto& [cell, mult] : domain) {
    if (mult != 1) return 0;
  }
  const int col0 = domain[0].first / n;
  const int row0 = domain[0].first % n;
  bool same_col = true;
  bool same_row = true;
  for (const auto& [cell, mult] : domain) {
    if (cell / n != col0) same_col = false;
    if (cell % n != row0) same_row = false;
  }
  if (same_row) return 1;
  if (same_col) return 2;
  return 0;
}

}  // namespace

DirectedRectangle::DirectedRectangle(int n, int a, int c, int b, int d,
                                     int dir)
    : n(n), a(a), c(c), b(b), d(d), dir(dir) {
  check_size(n);
  for (int v : {a, c, b, d}) {
    if (v < 0 || v >= n) throw input_error("rectangle corner out of range");
  }
  if (a == c) throw input_error("rectangle column pair must be distinct");
  if (b == d) throw input_error("rectangle row pair must be distinct");
  if (dir != 0 && dir != 1) throw input_error("rectangle direction must be 0 or 1");
}

std::pair<GridPoint, GridPoint> DirectedRectangle::initial_corners() const {
  if (dir == 0) return {{a, b}, {c, d}};
  return {{a, d}, {c, b}};
}

std::pair<GridPoint, GridPoint> DirectedRectangle::terminal_corners() const {
  if (dir == 0) return {{a, d}, {c, b}};
  return {{a, b}, {c, d}};
}

std::vector<GridPoint> DirectedRectangle::footprint() const {
  std::vector<GridPoint> cells;
  for (int col = a; col != c; col = (col + 1) % n) {
    for (int row = b; row != d; row = (row + 1) % n) {
      cells.push_back({col, row});
    }
  }
  return cells;
}

DirectedRectangle DirectedRectangle::reversed() const {
  return DirectedRectangle(n, a, c, b, d, 1 - dir);
}

std::vector<DirectedRectangle> enumerate_rectangles(int n) {
  check_size(n);
  std::vector<DirectedRectangle> out;
  out.reserve(2 * n * n * (n - 1) * (n - 1));
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      if (c == a) continue;
      for (int b = 0; b < n; ++b) {
        for (int d = 0; d < n; ++d) {
          if (d == b) continue;
          for (int dir = 0; dir < 2; ++dir) {
            out.push_back(DirectedRectangle(n, a, c, b, d, dir));
          }
        }
      }
    }
  }
  return out;
}

SignSystem build_constraints(int n) {
  check_size(n);
  SignSystem system;
  system.n = n;
  system.rectangles = enumerate_rectangles(n);
  const int count = static_cast<int>(system.rectangles.size());

  std::vector<RectInfo> info(count);
  for (int i = 0; i < count; ++i) {
    const DirectedRectangle& r = system.rectangles[i];
    RectInfo& ri = info[i];
    ri.init = sort_pair(r.initial_corners());
    ri.term = sort_pair(r.terminal_corners());
    ri.a = r.a;
    ri.c = r.c;
    ri.b = r.b;
    ri.d = r.d;
    ri.dir = r.dir;
    ri.col_lo = std::min(r.a, r.c);
    ri.col_hi = std::max(r.a, r.c);
    for (const GridPoint& cell : r.footprint()) {
      ri.cells.push_back(cell.col * n + cell.row);
    }
    std::sort(ri.cells.begin(), ri.cells.end());
  }

  // Group every composable ordered pair by the composite's end corners and
  // total multiplicity region.
  std::unordered_map<std::string, std::vector<std::pair<int, int>>> groups;
  groups.reserve(1u << 20);
  std::vector<std::pair<int, int>> domain;
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      if (!composable(info[i], info[j])) continue;
      const RectInfo& r1 = info[i];
      const RectInfo& r2 = info[j];

      std::vector<GridPoint> initial(r1.init.begin(), r1.init.end());
      for (const GridPoint& q : r2.init) {
        if (!pair_contains(r1.term, q)) initial.push_back(q);
      }
      std::vector<GridPoint> terminal(r2.term.begin(), r2.term.end());
      for (const GridPoint& q : r1.term) {
        if (!pair_contains(r2.init, q)) terminal.push_back(q);
      }
      std::sort(initial.begin(), initial.end());
      std::sort(terminal.begin(), terminal.end());

      domain.clear();
      std::size_t p1 = 0;
      std::size_t p2 = 0;
      while (p1 < r1.cells.size() || p2 < r2.cells.size()) {
        int cell;
        if (p2 >= r2.cells.size() ||
            (p1 < r1.cells.size() && r1.cells[p1] <= r2.cells[p2])) {
          cell = r1.cells[p1++];
        } else {
          cell = r2.cells[p2++];
        }
        if (!domain.empty() && domain.back().first == cell) {
          ++domain.back().second;
        } else {
          domain.push_back({cell, 1});
        }
      }

      // The direction bit joins the key so decompositions of a region are only
      // identified within one calculus.  A strip traversed forward and the
      // same strip traversed in reverse share their end corners and region,
      // yet equating those two factorizations is contradictory at n = 4.
      std::string key;
      key.reserve(2 * (initial.size() + terminal.size()) + 3 * domain.size() + 3);
      key.push_back(static_cast<char>(r1.dir));
      for (const GridPoint& q : initial) append_u16(key, q.col * n + q.row);
      key.push_back('|');
      for (const GridPoint& q : terminal) append_u16(key, q.col * n + q.row);
      key.push_back('|');
      for (const auto& [cell, mult] : domain) {
        append_u16(key, cell);
        key.push_back(static_cast<char>(mult));
      }
      groups[key].push_back({i, j});
    }
  }

  // Transposition transport products, cached per ordered column-pair pair.
  std::vector<CliffordElement> lift(n * n, CliffordElement::scalar(n, Scalar::zero()));
  for (int lo = 0; lo < n; ++lo) {
    for (int hi = lo + 1; hi < n; ++hi) {
      lift[lo * n + hi] = transposition_lift(n, lo, hi).value;
    }
  }
  const auto transport = [&](const RectInfo& r1, const RectInfo& r2) {
    return clifford_mul(lift[r1.col_lo * n + r1.col_hi],
                        lift[r2.col_lo * n + r2.col_hi]);
  };

  std::set<std::pair<std::vector<int>, int>> seen;
  const auto emit = [&](const std::string& kind, std::vector<int> vars,
                        int rhs) {
    std::sort(vars.begin(), vars.end());
    std::vector<int> reduced;
    for (std::size_t k = 0; k < vars.size();) {
      std::size_t run = k;
      while (run < vars.size() && vars[run] == vars[k]) ++run;
      if ((run - k) % 2 == 1) reduced.push_back(vars[k]);
      k = run;
    }
    if (reduced.empty() && rhs == 0) return;
    if (!seen.insert({reduced, rhs}).second) return;
    system.equations.push_back({kind, std::move(reduced), rhs});
  };

  for (const auto& [key, decomps] : groups) {
    const std::size_t bar = key.find('|');
    const std::size_t bar2 = key.find('|', bar + 1);
    std::vector<std::pair<int, int>> dom;
    for (std::size_t k = bar2 + 1; k + 3 <= key.size(); k += 3) {
      const int cell = (static_cast<unsigned char>(key[k]) << 8) |
                       static_cast<unsigned char>(key[k + 1]);
      dom.push_back({cell, static_cast<unsigned char>(key[k + 2])});
    }
    const int annulus = annulus_type(dom, n);
    if (annulus != 0) {
      for (const auto& [i, j] : decomps) {
        emit(annulus == 1 ? "horizontal-annulus" : "vertical-annulus",
             {i, j}, annulus == 1 ? 0 : 1);
      }
      continue;
    }
    for (std::size_t p = 0; p < decomps.size(); ++p) {
      for (std::size_t q = p + 1; q < decomps.size(); ++q) {
        const auto& [i1, j1] = decomps[p];
        const auto& [i2, j2] = decomps[q];
        const CliffordElement t1 = transport(info[i1], info[j1]);
        const CliffordElement t2 = transport(info[i2], info[j2]);
        int gamma;
        if (t1 == t2) {
          gamma = 1;
        } else if (clifford_scale(Scalar::from_int(-1), t1) == t2) {
          gamma = -1;
        } else {
          throw computation_error(
              "decomposition transports are not proportional for pair " +
              describe(system.rectangles[i1]) + describe(system.rectangles[j1]) +
              " vs " + describe(system.rectangles[i2]) +
              describe(system.rectangles[j2]));
        }
        emit("square", {i1, j1, i2, j2}, gamma == 1 ? 1 : 0);
      }
    }
  }
  // Hash map iteration order is not part of the contract, a sorted equation
  // list is.
  std::sort(system.equations.begin(), system.equations.end(),
            [](const SignConstraint& x, const SignConstraint& y) {
              return std::tie(x.kind, x.variables, x.rhs) <
                     std::tie(y.kind, y.variables, y.rhs);
            });
  return system;
}

namespace {

// Incremental echelon basis over Z/2 with the leading variable of each pivot
// row being its lowest set bit.
struct Gf2Basis {
  int nvars;
  int words;
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<int> row_rhs;
  std::vector<int> pivot_of_var;

  explicit Gf2Basis(int nvars)
      : nvars(nvars), words((nvars + 63) / 64), pivot_of_var(nvars, -1) {}

  static int lowest_bit(const std::vector<std::uint64_t>& bits) {
    for (std::size_t w = 0; w < bits.size(); ++w) {
      if (bits[w] != 0) {
        return static_cast<int>(w) * 64 +
               std::countr_zero(bits[w]);
      }
    }
    return -1;
  }

  // Returns false when the equation reduces to 0 = 1.
  bool add(const std::vector<int>& vars, int rhs) {
    std::vector<std::uint64_t> bits(words, 0);
    for (int v : vars) bits[v / 64] ^= 1ull << (v % 64);
    int r = rhs;
    while (true) {
      const int lead = lowest_bit(bits);
      if (lead < 0) return r == 0;
      const int pivot = pivot_of_var[lead];
      if (pivot < 0) {
        pivot_of_var[lead] = static_cast<int>(rows.size());
        rows.push_back(std::move(bits));
        row_rhs.push_back(r);
        return true;
      }
      for (int w = 0; w < words; ++w) bits[w] ^= rows[pivot][w];
      r ^= row_rhs[pivot];
    }
  }

  int rank() const { return static_cast<int>(rows.size()); }

  // Free variables take the seed bit; pivots are backsolved from the highest
  // leading variable down.  Every non-leading variable of a pivot row is
  // strictly larger than the leading one (the lead is the lowest set bit), so
  // descending order always sees its dependencies already assigned.
  std::vector<int> solve(int seed) const {
    std::vector<int> value(nvars, -1);
    for (int v = 0; v < nvars; ++v) {
      if (pivot_of_var[v] < 0) value[v] = seed;
    }
    for (int v = nvars - 1; v >= 0; --v) {
      const int pivot = pivot_of_var[v];
      if (pivot < 0) continue;
      int acc = row_rhs[pivot];
      for (int w = 0; w < words; ++w) {
        std::uint64_t bits = rows[pivot][w];
        while (bits != 0) {
          const int u = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          if (u != v) acc ^= value[u];
        }
      }
      value[v] = acc;
    }
    return value;
  }
};

}  // namespace

SignAssignment construct_sign_assignment(int n, bool free_ones) {
  const SignSystem system = build_constraints(n);
  Gf2Basis basis(static_cast<int>(system.rectangles.size()));
  for (const SignConstraint& eq : system.equations) {
    if (!basis.add(eq.variables, eq.rhs)) {
      std::ostringstream os;
      os << "sign constraint system is inconsistent; certificate: " << eq.kind
         << " equation on";
      for (int v : eq.variables) os << " " << describe(system.rectangles[v]);
      os << " = " << eq.rhs << " contradicts the prior equations";
      throw computation_error(os.str());
    }
  }
  const std::vector<int> value = basis.solve(free_ones ? 1 : 0);
  SignAssignment out;
  out.n = n;
  for (std::size_t i = 0; i < system.rectangles.size(); ++i) {
    out.signs[system.rectangles[i]] = value[i] == 0 ? 1 : -1;
  }
  return out;
}

std::vector<SignConstraint> verify_sign_assignment(const SignAssignment& s) {
  check_size(s.n);
  const std::vector<DirectedRectangle> all = enumerate_rectangles(s.n);
  if (s.signs.size() != all.size()) {
    throw input_error("sign assignment does not cover every rectangle");
  }
  for (const DirectedRectangle& r : all) {
    const auto it = s.signs.find(r);
    if (it == s.signs.end()) {
      throw input_error("sign assignment is missing rectangle " + describe(r));
    }
    if (it->second != 1 && it->second != -1) {
      throw input_error("sign values must be +1 or -1");
    }
  }
  const SignSystem system = build_constraints(s.n);
  std::vector<SignConstraint> violations;
  for (const SignConstraint& eq : system.equations) {
    int parity = 0;
    for (int v : eq.variables) {
      if (s.signs.at(system.rectangles[v]) == -1) parity ^= 1;
    }
    if (parity != eq.rhs) violations.push_back(eq);
  }
  return violations;
}

void write_sign_assignment(std::ostream& out, const SignAssignment& s) {
  check_size(s.n);
  out << kSignsHeader << "\n";
  out << "n=" << s.n << "\n";
  for (const auto& [r, sign] : s.signs) {
    out << r.a << " " << r.c << " " << r.b << " " << r.d << " " << r.dir << " "
        << sign << "\n";
  }
}

SignAssignment read_sign_assignment(std::istream& in) {
  std::string line;
  const auto next_line = [&]() {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line() || line != kSignsHeader) {
    throw input_error("sign assignment file must start with \"" +
                      std::string(kSignsHeader) + "\"");
  }
  if (!next_line() || line.rfind("n=", 0) != 0) {
    throw input_error("sign assignment file is missing the n=<size> line");
  }
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw input_error("malformed grid size line: " + line);
  }
  check_size(n);
  SignAssignment out;
  out.n = n;
  while (next_line()) {
    std::istringstream ls(line);
    int a, c, b, d, dir, sign;
    if (!(ls >> a >> c >> b >> d >> dir >> sign)) {
      throw input_error("malformed sign line: " + line);
    }
    std::string extra;
    if (ls >> extra) throw input_error("trailing data on sign line: " + line);
    if (sign != 1 && sign != -1) {
      throw input_error("sign must be +1 or -1 on line: " + line);
    }
    DirectedRectangle r(n, a, c, b, d, dir);
    if (!out.signs.insert({r, sign}).second) {
      throw input_error("duplicate rectangle on line: " + line);
    }
  }
  const std::size_t expected = enumerate_rectangles(n).size();
  if (out.signs.size() != expected) {
    throw input_error("sign assignment does not cover every rectangle");
  }
  return out;
}

}  // namespace pinfloer
