#include "cli_lib.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pinfloer/clifford.hpp"
#include "pinfloer/errors.hpp"
#include "pinfloer/grading.hpp"
#include "pinfloer/grid.hpp"
#include "pinfloer/homology.hpp"
#include "pinfloer/scalar.hpp"
#include "pinfloer/signs.hpp"
#include "pinfloer/torus_triangles.hpp"

namespace pinfloer::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kDefaultSizeCap = 8;
constexpr int kHardSizeCap = 10;

/// Upper bound on worker threads, from the one recognized environment
/// variable. Outputs never depend on it; it only caps parallelism.
int thread_cap() {
  const char* raw = std::getenv("PINFLOER_THREADS");
  if (raw == nullptr || *raw == '\0') {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
  }
  const std::string text(raw);
  if (text.find_first_not_of("0123456789") != std::string::npos ||
      text.size() > 3) {
    throw input_error("PINFLOER_THREADS must be a positive integer");
  }
  const int value = std::atoi(text.c_str());
  if (value < 1 || value > 256) {
    throw input_error("PINFLOER_THREADS must be between 1 and 256");
  }
  return value;
}

int checked_cap(int max_size) {
  if (max_size < 2 || max_size > kHardSizeCap) {
    throw input_error("--max-size must be between 2 and " +
                      std::to_string(kHardSizeCap));
  }
  return max_size;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw input_error("cannot open file: " + path);
  }
  return in;
}

void emit_json(std::ostream& out, const Json& report) {
  out << report.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// pin demo

std::string label_of(const CliffordElement& value,
                     const std::vector<std::pair<std::string, CliffordElement>>&
                         dictionary) {
  for (const auto& [label, element] : dictionary) {
    if (value == element) {
      return label;
    }
  }
  throw computation_error("product escaped the four element subgroup");
}

Json run_pin_demo(int dim) {
  const CliffordElement one = CliffordElement::scalar(dim, Scalar::one());
  const CliffordElement e1 = CliffordElement::generator(dim, 0);
  const std::vector<std::pair<std::string, CliffordElement>> four = {
      {"+1", one}, {"-1", -one}, {"+e1", e1}, {"-e1", -e1}};

  Json table = Json::array();
  bool klein = true;
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) {
      const std::string label =
          label_of(clifford_mul(four[i].second, four[j].second), four);
      // Klein four law: with elements indexed by two sign bits, the product
      // lives at the bitwise xor of the factors.
      if (label != four[i ^ j].first) {
        klein = false;
      }
      row.push_back(label);
    }
    table.push_back(row);
  }

  bool squares_identity = true;
  bool images_transpositions = true;
  for (int i = 0; i + 1 < dim; ++i) {
    const PinElement lift = transposition_lift(dim, i, i + 1);
    if (pin_mul(lift, lift).value != one) {
      squares_identity = false;
    }
    std::vector<std::vector<Scalar>> rows(
        dim, std::vector<Scalar>(dim, Scalar()));
    for (int r = 0; r < dim; ++r) {
      int c = r;
      if (r == i) {
        c = i + 1;
      } else if (r == i + 1) {
        c = i;
      }
      rows[r][c] = Scalar::one();
    }
    if (pin_to_orthogonal(lift) != OrthogonalMatrix(std::move(rows))) {
      images_transpositions = false;
    }
  }

  const PinElement unit = pin_from_vectors(dim, {});
  const bool kernel_identity =
      pin_to_orthogonal(unit) == OrthogonalMatrix::identity(dim) &&
      pin_to_orthogonal(pin_negate(unit)) == OrthogonalMatrix::identity(dim);

  Json report;
  report["report"] = "pin-demo";
  report["version"] = 1;
  report["dimension"] = dim;
  Json group;
  group["elements"] = Json::array({"+1", "-1", "+e1", "-e1"});
  group["table"] = table;
  group["is_klein_four"] = klein;
  report["four_group"] = group;
  Json lifts;
  lifts["count"] = dim - 1;
  lifts["squares_are_identity"] = squares_identity;
  lifts["images_are_transpositions"] = images_transpositions;
  report["adjacent_lifts"] = lifts;
  Json kernel;
  kernel["elements"] = Json::array({"+1", "-1"});
  kernel["images_are_identity"] = kernel_identity;
  report["kernel"] = kernel;
  return report;
}

void render_pin_demo(std::ostream& out, const Json& r) {
  out << "Pin demo in dimension " << r["dimension"].get<int>() << "\n\n";
  out << "subgroup {+1, -1, +e1, -e1} multiplication table:\n";
  const auto& elements = r["four_group"]["elements"];
  out << std::setw(6) << "*";
  for (const auto& e : elements) {
    out << std::setw(6) << e.get<std::string>();
  }
  out << "\n";
  for (int i = 0; i < 4; ++i) {
    out << std::setw(6) << elements[i].get<std::string>();
    for (const auto& cell : r["four_group"]["table"][i]) {
      out << std::setw(6) << cell.get<std::string>();
    }
    out << "\n";
  }
  out << "matches the Klein four group: "
      << (r["four_group"]["is_klein_four"].get<bool>() ? "yes" : "no") << "\n";
  out << "adjacent lifts: " << r["adjacent_lifts"]["count"].get<int>()
      << ", squares are identity: "
      << (r["adjacent_lifts"]["squares_are_identity"].get<bool>() ? "yes"
                                                                  : "no")
      << ", images are transpositions: "
      << (r["adjacent_lifts"]["images_are_transpositions"].get<bool>() ? "yes"
                                                                       : "no")
      << "\n";
  out << "kernel {+1, -1} maps to the identity matrix: "
      << (r["kernel"]["images_are_identity"].get<bool>() ? "yes" : "no")
      << "\n";
}

// ---------------------------------------------------------------------------
// grading compute

RatMat parse_curve_basis(const Json& value, const std::string& name, int g) {
  if (!value.is_array() || static_cast<int>(value.size()) != g) {
    throw input_error(name + " must list exactly genus curve classes");
  }
  RatMat rows;
  for (const auto& entry : value) {
    if (!entry.is_array() || static_cast<int>(entry.size()) != 2 * g) {
      throw input_error(name + " curve classes must have 2 genus entries");
    }
    RatVec row;
    for (const auto& coefficient : entry) {
      if (!coefficient.is_number_integer()) {
        throw input_error(name + " curve class entries must be integers");
      }
      row.push_back(Rational(coefficient.get<long long>()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json run_grading_compute(const std::string& path) {
  std::ifstream in = open_input(path);
  Json input;
  try {
    input = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw input_error("diagram file is not valid JSON: " +
                      std::string(e.what()));
  }
  if (!input.is_object() || input.value("format", "") != "pinfloer-diagram v1") {
    throw input_error(
        "diagram file must declare \"format\": \"pinfloer-diagram v1\"");
  }
  if (!input.contains("genus") || !input["genus"].is_number_integer()) {
    throw input_error("diagram file must give an integer genus");
  }
  const int genus = input["genus"].get<int>();
  if (genus < 1 || genus > 16) {
    throw input_error("genus must be between 1 and 16");
  }
  if (!input.contains("alpha") || !input.contains("beta")) {
    throw input_error("diagram file must give alpha and beta curve classes");
  }
  SurfaceHomologyData data(SymplecticSpace(genus),
                           parse_curve_basis(input["alpha"], "alpha", genus),
                           parse_curve_basis(input["beta"], "beta", genus));
  const auto [b1, h2] = betti_numbers(data);

  Json gradings = Json::array();
  const Json generators = input.value("generators", Json::array());
  if (!generators.is_array()) {
    throw input_error("generators must be an array");
  }
  for (const auto& gen : generators) {
    if (!gen.is_object() || !gen.contains("sigma") || !gen.contains("eps")) {
      throw input_error("each generator needs sigma and eps arrays");
    }
    GeneratorLocalData local;
    for (const auto& s : gen["sigma"]) {
      if (!s.is_number_integer()) {
        throw input_error("sigma entries must be integers");
      }
      local.sigma.push_back(s.get<int>());
    }
    for (const auto& e : gen["eps"]) {
      if (!e.is_number_integer()) {
        throw input_error("eps entries must be integers");
      }
      local.eps.push_back(e.get<int>());
    }
    gradings.push_back(gr_hf(data, local));
  }

  Json report;
  report["report"] = "grading";
  report["version"] = 1;
  report["genus"] = genus;
  report["b1"] = b1;
  report["h2"] = h2;
  report["generators"] = generators.size();
  report["gradings"] = gradings;
  return report;
}

void render_grading(std::ostream& out, const Json& r) {
  out << "diagram of genus " << r["genus"].get<int>() << "\n";
  out << "b1 = " << r["b1"].get<int>() << ", h2 = " << r["h2"].get<int>()
      << "\n";
  out << "generators: " << r["generators"].get<int>() << "\n";
  int index = 0;
  for (const auto& g : r["gradings"]) {
    out << "  generator " << index++ << ": gr = " << g.get<int>() << "\n";
  }
}

// ---------------------------------------------------------------------------
// signs build / verify

Json violation_json(const std::vector<SignConstraint>& violations) {
  Json details = Json::array();
  const std::size_t limit = 100;
  for (std::size_t i = 0; i < violations.size() && i < limit; ++i) {
    Json v;
    v["kind"] = violations[i].kind;
    v["rhs"] = violations[i].rhs;
    v["variables"] = violations[i].variables;
    details.push_back(v);
  }
  return details;
}

Json run_signs_build(int n, bool free_ones, const std::string& out_path) {
  const SignAssignment assignment = construct_sign_assignment(n, free_ones);
  const auto violations = verify_sign_assignment(assignment);
  long positive = 0;
  long negative = 0;
  for (const auto& [rect, sign] : assignment.signs) {
    (sign > 0 ? positive : negative) += 1;
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      throw input_error("cannot write file: " + out_path);
    }
    write_sign_assignment(out, assignment);
  }

  Json report;
  report["report"] = "signs-build";
  report["version"] = 1;
  report["n"] = n;
  report["free_ones"] = free_ones;
  report["rectangles"] = assignment.signs.size();
  report["positive"] = positive;
  report["negative"] = negative;
  report["violations"] = violations.size();
  report["details"] = violation_json(violations);
  if (out_path.empty()) {
    report["file"] = nullptr;
  } else {
    report["file"] = out_path;
  }
  return report;
}

Json run_signs_verify(const std::string& path) {
  std::ifstream in = open_input(path);
  const SignAssignment assignment = read_sign_assignment(in);
  const auto violations = verify_sign_assignment(assignment);

  Json report;
  report["report"] = "signs-verify";
  report["version"] = 1;
  report["n"] = assignment.n;
  report["rectangles"] = assignment.signs.size();
  report["violations"] = violations.size();
  report["details"] = violation_json(violations);
  report["truncated"] = violations.size() > 100;
  return report;
}

void render_signs(std::ostream& out, const Json& r) {
  out << "sign assignment on the " << r["n"].get<int>() << " by "
      << r["n"].get<int>() << " grid torus\n";
  out << "rectangles: " << r["rectangles"].get<long>() << "\n";
  if (r.contains("positive")) {
    out << "positive: " << r["positive"].get<long>()
        << ", negative: " << r["negative"].get<long>() << "\n";
  }
  out << "violations: " << r["violations"].get<long>() << "\n";
  for (const auto& v : r["details"]) {
    out << "  " << v["kind"].get<std::string>() << " equation, rhs "
        << v["rhs"].get<int>() << ", variables";
    for (const auto& idx : v["variables"]) {
      out << " " << idx.get<int>();
    }
    out << "\n";
  }
  if (r.contains("file") && !r["file"].is_null()) {
    out << "written to " << r["file"].get<std::string>() << "\n";
  }
}

// ---------------------------------------------------------------------------
// grid hom / moves-check

GridDiagram load_grid(const std::string& path, int cap) {
  std::ifstream in = open_input(path);
  const GridDiagram g = read_grid(in);
  if (g.n > cap) {
    throw input_error("grid size " + std::to_string(g.n) +
                      " exceeds the configured cap " + std::to_string(cap));
  }
  return g;
}

Json homology_groups_json(const HomologySummary& summary) {
  Json groups = Json::array();
  for (const auto& [bigrading, group] : summary.groups) {
    Json one;
    one["maslov"] = bigrading.maslov;
    one["alexander_twice"] = bigrading.alexander_twice;
    one["free_rank"] = group.free_rank;
    Json torsion = Json::array();
    for (const Int& t : group.torsion) {
      torsion.push_back(t.convert_to<long long>());
    }
    one["torsion"] = torsion;
    groups.push_back(one);
  }
  return groups;
}

Json run_grid_hom(const std::string& path, const std::string& flavor,
                  int max_size) {
  const int cap = checked_cap(max_size);
  const GridDiagram g = load_grid(path, cap);
  const SignAssignment signs = construct_sign_assignment(g.n);

  Json report;
  report["report"] = "grid-hom";
  report["version"] = 1;
  report["n"] = g.n;
  report["components"] = component_count(g);
  report["flavor"] = flavor;

  if (flavor == "tilde") {
    const HomologySummary summary = tilde_homology(g, signs, thread_cap());
    long torsion_groups = 0;
    for (const auto& [bigrading, group] : summary.groups) {
      torsion_groups += static_cast<long>(group.torsion.size());
    }
    report["states"] = all_grid_states(g.n).size();
    report["total_free_rank"] = summary.total_free_rank();
    report["torsion_factors"] = torsion_groups;
    report["groups"] = homology_groups_json(summary);
    return report;
  }

  const GridComplex complex = grid_complex(g, signs, GridFlavor::minus);
  long entries = 0;
  for (const auto& column : complex.boundary) {
    entries += static_cast<long>(column.size());
  }
  const auto defect = boundary_square_defect(complex);
  const auto annuli = annulus_cancellation_report(g, signs);
  bool vertical_negative = true;
  bool horizontal_positive = true;
  for (const auto& a : annuli) {
    vertical_negative = vertical_negative && a.vertical_product == -1;
    horizontal_positive = horizontal_positive && a.horizontal_product == 1;
  }
  report["states"] = complex.states.size();
  report["boundary_entries"] = entries;
  report["square_defects"] = defect.has_value() ? 1 : 0;
  Json annulus;
  annulus["count"] = annuli.size();
  annulus["vertical_all_negative"] = vertical_negative;
  annulus["horizontal_all_positive"] = horizontal_positive;
  report["annuli"] = annulus;
  return report;
}

void render_grid_hom(std::ostream& out, const Json& r) {
  out << "grid of size " << r["n"].get<int>() << " with "
      << r["components"].get<int>() << " link component"
      << (r["components"].get<int>() == 1 ? "" : "s") << ", flavor "
      << r["flavor"].get<std::string>() << "\n";
  if (r["flavor"].get<std::string>() == "tilde") {
    out << "generators: " << r["states"].get<long>() << "\n";
    out << std::setw(8) << "maslov" << std::setw(8) << "2A" << std::setw(8)
        << "rank" << "  torsion\n";
    for (const auto& g : r["groups"]) {
      out << std::setw(8) << g["maslov"].get<int>() << std::setw(8)
          << g["alexander_twice"].get<int>() << std::setw(8)
          << g["free_rank"].get<long>() << "  ";
      if (g["torsion"].empty()) {
        out << "-";
      } else {
        for (const auto& t : g["torsion"]) {
          out << t.get<long long>() << " ";
        }
      }
      out << "\n";
    }
    out << "total free rank: " << r["total_free_rank"].get<long>() << "\n";
    return;
  }
  out << "generators: " << r["states"].get<long>() << "\n";
  out << "boundary entries: " << r["boundary_entries"].get<long>() << "\n";
  out << "square defects: " << r["square_defects"].get<long>() << "\n";
  out << "thin annuli: " << r["annuli"]["count"].get<long>()
      << ", vertical all -1: "
      << (r["annuli"]["vertical_all_negative"].get<bool>() ? "yes" : "no")
      << ", horizontal all +1: "
      << (r["annuli"]["horizontal_all_positive"].get<bool>() ? "yes" : "no")
      << "\n";
}

/// Prime power multiset of a torsion divisibility chain, the canonical form
/// for comparing abelian groups assembled from different direct sums.
std::map<long long, int> primary_decomposition(const std::vector<Int>& chain) {
  std::map<long long, int> powers;
  for (const Int& entry : chain) {
    long long value = entry.convert_to<long long>();
    for (long long p = 2; p * p <= value; ++p) {
      if (value % p != 0) {
        continue;
      }
      long long q = 1;
      while (value % p == 0) {
        value /= p;
        q *= p;
      }
      powers[q] += 1;
    }
    if (value > 1) {
      powers[value] += 1;
    }
  }
  return powers;
}

Json run_grid_moves(const std::string& path, int max_size) {
  const int cap = checked_cap(max_size);
  const GridDiagram g = load_grid(path, cap);
  const SignAssignment signs = construct_sign_assignment(g.n);
  const int threads = thread_cap();
  const HomologySummary base = tilde_homology(g, signs, threads);

  Json report;
  report["report"] = "grid-moves";
  report["version"] = 1;
  report["n"] = g.n;
  report["components"] = component_count(g);

  bool all_consistent = true;
  Json commutable_columns = Json::array();
  Json commutable_rows = Json::array();
  Json moves = Json::array();
  for (int c = 0; c < g.n; ++c) {
    if (!can_commute_columns(g, c)) {
      continue;
    }
    commutable_columns.push_back(c);
    const GridDiagram moved = commute_columns(g, c);
    const HomologySummary after = tilde_homology(moved, signs, threads);
    const bool preserved = after.groups == base.groups;
    all_consistent = all_consistent && preserved;
    Json move;
    move["kind"] = "column";
    move["at"] = c;
    move["preserved"] = preserved;
    moves.push_back(move);
  }
  for (int r = 0; r < g.n; ++r) {
    if (!can_commute_rows(g, r)) {
      continue;
    }
    commutable_rows.push_back(r);
    const GridDiagram moved = commute_rows(g, r);
    const HomologySummary after = tilde_homology(moved, signs, threads);
    const bool preserved = after.groups == base.groups;
    all_consistent = all_consistent && preserved;
    Json move;
    move["kind"] = "row";
    move["at"] = r;
    move["preserved"] = preserved;
    moves.push_back(move);
  }
  report["commutable_columns"] = commutable_columns;
  report["commutable_rows"] = commutable_rows;
  report["moves"] = moves;

  Json stabilizations = Json::array();
  const bool skip_stabilization = g.n + 1 > cap;
  if (!skip_stabilization) {
    const SignAssignment bigger_signs = construct_sign_assignment(g.n + 1);
    const struct {
      const char* name;
      GridDiagram (*apply)(const GridDiagram&, int);
    } flavors[] = {{"x", stabilize_at_x}, {"o", stabilize_at_o}};
    for (const auto& flavor : flavors) {
      const GridDiagram bigger = flavor.apply(g, 0);
      const HomologySummary after = tilde_homology(bigger, bigger_signs,
                                                   threads);
      const bool rank_doubles =
          after.total_free_rank() == 2 * base.total_free_rank();

      // Every group reappears verbatim plus a copy shifted down one in the
      // homological grading and down two in the doubled filtration grading.
      bool pattern = true;
      std::map<Bigrading, std::pair<long, std::map<long long, int>>> expected;
      for (const auto& [bigrading, group] : base.groups) {
        const auto primary = primary_decomposition(group.torsion);
        auto& straight = expected[bigrading];
        straight.first += group.free_rank;
        for (const auto& [q, m] : primary) {
          straight.second[q] += m;
        }
        auto& shifted =
            expected[{bigrading.maslov - 1, bigrading.alexander_twice - 2}];
        shifted.first += group.free_rank;
        for (const auto& [q, m] : primary) {
          shifted.second[q] += m;
        }
      }
      std::map<Bigrading, std::pair<long, std::map<long long, int>>> actual;
      for (const auto& [bigrading, group] : after.groups) {
        actual[bigrading] = {group.free_rank,
                             primary_decomposition(group.torsion)};
      }
      pattern = expected == actual;

      const auto undone = destabilize(bigger, 0);
      const bool roundtrip = undone.has_value() &&
                             undone->o_rows == g.o_rows &&
                             undone->x_rows == g.x_rows;
      all_consistent =
          all_consistent && rank_doubles && pattern && roundtrip;
      Json one;
      one["flavor"] = flavor.name;
      one["at"] = 0;
      one["rank_doubles"] = rank_doubles;
      one["pattern_holds"] = pattern;
      one["roundtrip"] = roundtrip;
      stabilizations.push_back(one);
    }
  }
  report["stabilizations"] = stabilizations;
  report["stabilization_skipped"] = skip_stabilization;
  report["all_consistent"] = all_consistent;
  return report;
}

void render_grid_moves(std::ostream& out, const Json& r) {
  out << "grid of size " << r["n"].get<int>() << " with "
      << r["components"].get<int>() << " link component"
      << (r["components"].get<int>() == 1 ? "" : "s") << "\n";
  out << "commutable columns:";
  for (const auto& c : r["commutable_columns"]) {
    out << " " << c.get<int>();
  }
  out << "\ncommutable rows:";
  for (const auto& c : r["commutable_rows"]) {
    out << " " << c.get<int>();
  }
  out << "\n";
  for (const auto& m : r["moves"]) {
    out << "  " << m["kind"].get<std::string>() << " " << m["at"].get<int>()
        << ": homology " << (m["preserved"].get<bool>() ? "preserved" : "CHANGED")
        << "\n";
  }
  if (r["stabilization_skipped"].get<bool>()) {
    out << "stabilization skipped, needs size headroom under the cap\n";
  } else {
    for (const auto& s : r["stabilizations"]) {
      out << "  stabilization at " << s["flavor"].get<std::string>()
          << " column 0: rank doubles "
          << (s["rank_doubles"].get<bool>() ? "yes" : "no") << ", shift pattern "
          << (s["pattern_holds"].get<bool>() ? "holds" : "BROKEN")
          << ", destabilize round trip "
          << (s["roundtrip"].get<bool>() ? "ok" : "BROKEN") << "\n";
    }
  }
  out << "all consistent: "
      << (r["all_consistent"].get<bool>() ? "yes" : "no") << "\n";
}

// ---------------------------------------------------------------------------
// triangle check

Json run_triangle_check(int max_k, bool twisted) {
  if (max_k < 1 || max_k > 24) {
    throw input_error("--maxk must be between 1 and 24");
  }
  const GenusOneTriple t;
  const auto classes = enumerate_triangles(t, max_k);

  Json pairs = Json::array();
  bool criterion = true;
  for (int k = 1; k <= max_k; ++k) {
    const TriangleClass& plus = classes[2 * (k - 1)];
    const TriangleClass& minus = classes[2 * (k - 1) + 1];
    const int untwisted_sum = pair_sum(t, k, false);
    const int twisted_sum = pair_sum(t, k, true);
    if (twisted) {
      criterion = criterion && twisted_sum == 0;
    } else {
      criterion = criterion && std::abs(untwisted_sum) == 2 &&
                  (k != 1 || untwisted_sum == 2);
    }
    Json row;
    row["k"] = k;
    row["n_z"] = plus.n_z;
    row["parities"] = Json::array({plus.delta_p_parity, minus.delta_p_parity});
    row["untwisted_sum"] = untwisted_sum;
    row["twisted_sum"] = twisted_sum;
    pairs.push_back(row);
  }

  const IsotopicCirclePair circles;
  const auto bigons = enumerate_bigons(circles);
  const auto groups = homology_of_complex(bigon_complex(circles));
  long bigon_rank = 0;
  for (const auto& g : groups) {
    bigon_rank += g.free_rank;
  }
  const bool bigons_opposite = bigons[0].sign + bigons[1].sign == 0 &&
                               bigons[0].sign == 1;
  criterion = criterion && bigons_opposite && bigon_rank == 2;

  Json report;
  report["report"] = "triangle-check";
  report["version"] = 1;
  report["max_k"] = max_k;
  report["criterion"] = twisted ? "twisted" : "untwisted";
  report["pairs"] = pairs;
  Json bigon;
  bigon["signs"] = Json::array({bigons[0].sign, bigons[1].sign});
  bigon["sum"] = bigons[0].sign + bigons[1].sign;
  bigon["homology_rank"] = bigon_rank;
  report["bigons"] = bigon;
  report["criterion_holds"] = criterion;
  return report;
}

void render_triangle_check(std::ostream& out, const Json& r) {
  out << "triangle pairs through k = " << r["max_k"].get<int>() << "\n";
  out << std::setw(4) << "k" << std::setw(6) << "n_z" << std::setw(10)
      << "parities" << std::setw(11) << "untwisted" << std::setw(9)
      << "twisted" << "\n";
  for (const auto& row : r["pairs"]) {
    std::ostringstream parities;
    parities << row["parities"][0].get<int>() << ","
             << row["parities"][1].get<int>();
    out << std::setw(4) << row["k"].get<int>() << std::setw(6)
        << row["n_z"].get<long long>() << std::setw(10) << parities.str()
        << std::setw(11) << std::showpos << row["untwisted_sum"].get<int>()
        << std::setw(9) << row["twisted_sum"].get<int>() << std::noshowpos
        << "\n";
  }
  out << "bigon signs: " << std::showpos
      << r["bigons"]["signs"][0].get<int>() << " "
      << r["bigons"]["signs"][1].get<int>() << std::noshowpos
      << ", homology rank " << r["bigons"]["homology_rank"].get<long>() << "\n";
  out << r["criterion"].get<std::string>() << " criterion: "
      << (r["criterion_holds"].get<bool>() ? "holds" : "FAILS") << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"exact sign-refined grid homology and torus triangle counts"};
  app.require_subcommand(1);

  std::string format = "json";
  const auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
  };

  int exit_code = 0;
  Json report;
  // Renderer invoked when --format text is active; JSON otherwise.
  void (*render)(std::ostream&, const Json&) = nullptr;

  CLI::App* pin = app.add_subcommand("pin", "Clifford and Pin group demos");
  pin->require_subcommand(1);
  CLI::App* pin_demo = pin->add_subcommand(
      "demo", "multiplication table and double cover facts");
  int demo_dim = 3;
  pin_demo->add_option("--dim", demo_dim, "ambient dimension")
      ->check(CLI::Range(1, 10))
      ->capture_default_str();
  add_format(pin_demo);
  pin_demo->callback([&]() {
    report = run_pin_demo(demo_dim);
    render = render_pin_demo;
  });

  CLI::App* grading =
      app.add_subcommand("grading", "absolute Z/2 gradings from diagrams");
  grading->require_subcommand(1);
  CLI::App* grading_compute = grading->add_subcommand(
      "compute", "gradings of the generators in a diagram file");
  std::string grading_file;
  grading_compute->add_option("--file", grading_file, "diagram JSON file")
      ->required();
  add_format(grading_compute);
  grading_compute->callback([&]() {
    report = run_grading_compute(grading_file);
    render = render_grading;
  });

  CLI::App* signs =
      app.add_subcommand("signs", "sign assignments on grid rectangles");
  signs->require_subcommand(1);
  CLI::App* signs_build =
      signs->add_subcommand("build", "construct a verified sign assignment");
  int signs_n = 4;
  bool signs_free_ones = false;
  std::string signs_out;
  int signs_cap = kDefaultSizeCap;
  signs_build->add_option("--n", signs_n, "grid size")
      ->required()
      ->check(CLI::Range(2, kHardSizeCap));
  signs_build->add_flag("--free-ones", signs_free_ones,
                        "gauge with free variables set to +1");
  signs_build->add_option("--out", signs_out, "write the assignment here");
  signs_build->add_option("--max-size", signs_cap, "size cap override")
      ->capture_default_str();
  add_format(signs_build);
  signs_build->callback([&]() {
    if (signs_n > checked_cap(signs_cap)) {
      throw input_error("grid size " + std::to_string(signs_n) +
                        " exceeds the configured cap " +
                        std::to_string(signs_cap));
    }
    report = run_signs_build(signs_n, signs_free_ones, signs_out);
    render = render_signs;
    exit_code = report["violations"].get<long>() == 0 ? 0 : 1;
  });
  CLI::App* signs_verify =
      signs->add_subcommand("verify", "check a sign assignment file");
  std::string signs_file;
  signs_verify->add_option("--file", signs_file, "sign assignment file")
      ->required();
  add_format(signs_verify);
  signs_verify->callback([&]() {
    report = run_signs_verify(signs_file);
    render = render_signs;
    exit_code = report["violations"].get<long>() == 0 ? 0 : 1;
  });

  CLI::App* grid = app.add_subcommand("grid", "grid diagram computations");
  grid->require_subcommand(1);
  CLI::App* grid_hom =
      grid->add_subcommand("hom", "homology of a grid diagram file");
  std::string grid_file;
  std::string grid_flavor = "tilde";
  int grid_cap = kDefaultSizeCap;
  grid_hom->add_option("--file", grid_file, "grid diagram file")->required();
  grid_hom->add_option("--flavor", grid_flavor, "complex flavor")
      ->check(CLI::IsMember({"tilde", "minus"}))
      ->capture_default_str();
  grid_hom->add_option("--max-size", grid_cap, "size cap override")
      ->capture_default_str();
  add_format(grid_hom);
  grid_hom->callback([&]() {
    report = run_grid_hom(grid_file, grid_flavor, grid_cap);
    render = render_grid_hom;
    if (grid_flavor == "minus") {
      const bool clean =
          report["square_defects"].get<long>() == 0 &&
          report["annuli"]["vertical_all_negative"].get<bool>() &&
          report["annuli"]["horizontal_all_positive"].get<bool>();
      exit_code = clean ? 0 : 1;
    }
  });
  CLI::App* grid_moves = grid->add_subcommand(
      "moves-check", "homology invariance under legal moves");
  std::string moves_file;
  int moves_cap = kDefaultSizeCap;
  grid_moves->add_option("--file", moves_file, "grid diagram file")
      ->required();
  grid_moves->add_option("--max-size", moves_cap, "size cap override")
      ->capture_default_str();
  add_format(grid_moves);
  grid_moves->callback([&]() {
    report = run_grid_moves(moves_file, moves_cap);
    render = render_grid_moves;
    exit_code = report["all_consistent"].get<bool>() ? 0 : 1;
  });

  CLI::App* triangle =
      app.add_subcommand("triangle", "torus triangle and bigon counts");
  triangle->require_subcommand(1);
  CLI::App* triangle_check = triangle->add_subcommand(
      "check", "pair sums and bigon signs on the standard torus");
  int max_k = 6;
  bool twisted = false;
  triangle_check->add_option("--maxk", max_k, "largest pair index")
      ->capture_default_str();
  triangle_check->add_flag("--twisted", twisted,
                           "require the point-twisted sums to vanish");
  add_format(triangle_check);
  triangle_check->callback([&]() {
    report = run_triangle_check(max_k, twisted);
    render = render_triangle_check;
    exit_code = report["criterion_holds"].get<bool>() ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const input_error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const computation_error& e) {
    err << "computation error: " << e.what() << "\n";
    return 1;
  }

  if (render == nullptr) {
    err << "no subcommand ran\n";
    return 2;
  }
  if (format == "text") {
    render(out, report);
  } else {
    emit_json(out, report);
  }
  return exit_code;
}

}  // namespace pinfloer::cli
