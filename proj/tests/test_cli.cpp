#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_lib.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

CliResult invoke(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"pinfloer"};
  for (const std::string& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  CliResult result;
  result.code = pinfloer::cli::run(static_cast<int>(argv.size()), argv.data(),
                                   out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::filesystem::path scratch_dir() {
  const auto dir =
      std::filesystem::temp_directory_path() / "pinfloer-cli-tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_scratch(const std::string& name, const std::string& body) {
  const auto path = scratch_dir() / name;
  std::ofstream out(path);
  out << body;
  return path.string();
}

std::string unknot_grid() {
  return write_scratch("unknot2.grid",
                       "# pinfloer-grid v1\nn=2\nO: 2 1\nX: 1 2\n");
}

std::string unlink_grid() {
  return write_scratch("unlink4.grid",
                       "# pinfloer-grid v1\nn=4\nO: 2 1 4 3\nX: 1 2 3 4\n");
}

/// Sets an environment variable for the duration of one scope.
class EnvGuard {
public:
  EnvGuard(const char* name, const char* value) : name_(name) {
    const char* old = std::getenv(name);
    if (old != nullptr) {
      saved_ = old;
    }
    if (value == nullptr) {
      unsetenv(name);
    } else {
      setenv(name, value, 1);
    }
  }
  ~EnvGuard() {
    if (saved_.empty()) {
      unsetenv(name_);
    } else {
      setenv(name_, saved_.c_str(), 1);
    }
  }

private:
  const char* name_;
  std::string saved_;
};

}  // namespace

TEST_CASE("grid hom reports the unknot homology as stable bytes") {
  const auto result =
      invoke({"grid", "hom", "--file", unknot_grid(), "--flavor", "tilde"});
  REQUIRE(result.code == 0);
  const std::string expected = R"({
  "report": "grid-hom",
  "version": 1,
  "n": 2,
  "components": 1,
  "flavor": "tilde",
  "states": 2,
  "total_free_rank": 2,
  "torsion_factors": 0,
  "groups": [
    {
      "maslov": -1,
      "alexander_twice": -2,
      "free_rank": 1,
      "torsion": []
    },
    {
      "maslov": 0,
      "alexander_twice": 0,
      "free_rank": 1,
      "torsion": []
    }
  ]
}
)";
  CHECK(result.out == expected);
}

TEST_CASE("grid hom output is byte identical across thread settings") {
  const std::string file = unknot_grid();
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "3", static_cast<const char*>(nullptr)}) {
    EnvGuard guard("PINFLOER_THREADS", threads);
    const auto result = invoke({"grid", "hom", "--file", file});
    REQUIRE(result.code == 0);
    outputs.push_back(result.out);
  }
  CHECK(outputs[0] == outputs[1]);
  CHECK(outputs[0] == outputs[2]);

  EnvGuard guard("PINFLOER_THREADS", "banana");
  const auto bad = invoke({"grid", "hom", "--file", file});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("PINFLOER_THREADS") != std::string::npos);
}

TEST_CASE("grid hom minus flavor reports clean square and annulus checks") {
  const auto result =
      invoke({"grid", "hom", "--file", unknot_grid(), "--flavor", "minus"});
  REQUIRE(result.code == 0);
  const Json report = result.json();
  CHECK(report["square_defects"] == 0);
  CHECK(report["annuli"]["vertical_all_negative"] == true);
  CHECK(report["annuli"]["horizontal_all_positive"] == true);
  CHECK(report["annuli"]["count"] == 4);
}

TEST_CASE("grid hom enforces the size cap") {
  const std::string trefoil = write_scratch(
      "trefoil5.grid", "# pinfloer-grid v1\nn=5\nO: 3 4 5 1 2\nX: 1 2 3 4 5\n");
  const auto capped =
      invoke({"grid", "hom", "--file", trefoil, "--max-size", "4"});
  CHECK(capped.code == 2);
  CHECK(capped.err.find("exceeds the configured cap") != std::string::npos);
  const auto over = invoke({"grid", "hom", "--file", trefoil, "--max-size",
                            "11"});
  CHECK(over.code == 2);
}

TEST_CASE("grid moves-check passes on a commutable diagram") {
  const auto result = invoke({"grid", "moves-check", "--file", unlink_grid()});
  REQUIRE(result.code == 0);
  const Json report = result.json();
  CHECK(report["commutable_columns"] == Json::array({1, 3}));
  CHECK(report["commutable_rows"] == Json::array({1, 3}));
  CHECK(report["stabilization_skipped"] == false);
  CHECK(report["all_consistent"] == true);
  for (const auto& move : report["moves"]) {
    CHECK(move["preserved"] == true);
  }
  for (const auto& stab : report["stabilizations"]) {
    CHECK(stab["rank_doubles"] == true);
    CHECK(stab["pattern_holds"] == true);
    CHECK(stab["roundtrip"] == true);
  }
}

TEST_CASE("signs build verifies itself and round trips through a file") {
  const std::string path = (scratch_dir() / "n3.signs").string();
  const auto built =
      invoke({"signs", "build", "--n", "3", "--out", path});
  REQUIRE(built.code == 0);
  const Json report = built.json();
  CHECK(report["rectangles"] == 72);
  CHECK(report["violations"] == 0);

  const auto verified = invoke({"signs", "verify", "--file", path});
  CHECK(verified.code == 0);
  CHECK(verified.json()["violations"] == 0);
}

TEST_CASE("signs verify flags a corrupted file with exit code one") {
  const std::string path = (scratch_dir() / "corrupt.signs").string();
  REQUIRE(invoke({"signs", "build", "--n", "3", "--out", path}).code == 0);
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string body = buffer.str();
  const auto pos = body.find("-1");
  REQUIRE(pos != std::string::npos);
  body.replace(pos, 2, "+1");
  std::ofstream(path) << body;

  const auto result = invoke({"signs", "verify", "--file", path});
  CHECK(result.code == 1);
  const Json report = result.json();
  CHECK(report["violations"].get<long>() > 0);
  CHECK(!report["details"].empty());
}

TEST_CASE("grading compute reproduces the genus one worked values") {
  const std::string sphere = write_scratch("s3.json", R"({
    "format": "pinfloer-diagram v1",
    "genus": 1,
    "alpha": [[1, 0]],
    "beta": [[0, 1]],
    "generators": [ {"sigma": [0], "eps": [1]} ]
  })");
  const auto first = invoke({"grading", "compute", "--file", sphere});
  REQUIRE(first.code == 0);
  CHECK(first.json()["b1"] == 0);
  CHECK(first.json()["h2"] == 0);
  CHECK(first.json()["gradings"] == Json::array({0}));

  const std::string product = write_scratch("s1s2.json", R"({
    "format": "pinfloer-diagram v1",
    "genus": 1,
    "alpha": [[1, 0]],
    "beta": [[1, 0]],
    "generators": [ {"sigma": [0], "eps": [1]}, {"sigma": [0], "eps": [-1]} ]
  })");
  const auto second = invoke({"grading", "compute", "--file", product});
  REQUIRE(second.code == 0);
  CHECK(second.json()["b1"] == 1);
  CHECK(second.json()["h2"] == 1);
  Json gradings = second.json()["gradings"];
  REQUIRE(gradings.size() == 2);
  CHECK(gradings[0].get<int>() + gradings[1].get<int>() == 1);

  const std::string broken = write_scratch("broken.json", "{ not json");
  CHECK(invoke({"grading", "compute", "--file", broken}).code == 2);
  const std::string wrong = write_scratch("wrong.json", R"({
    "format": "pinfloer-diagram v1",
    "genus": 1,
    "alpha": [[1, 0]],
    "beta": [[1, 0, 0]]
  })");
  CHECK(invoke({"grading", "compute", "--file", wrong}).code == 2);
}

TEST_CASE("pin demo certifies the four group and the cover on the spot") {
  const auto result = invoke({"pin", "demo", "--dim", "4"});
  REQUIRE(result.code == 0);
  const Json report = result.json();
  CHECK(report["four_group"]["is_klein_four"] == true);
  CHECK(report["adjacent_lifts"]["count"] == 3);
  CHECK(report["adjacent_lifts"]["squares_are_identity"] == true);
  CHECK(report["adjacent_lifts"]["images_are_transpositions"] == true);
  CHECK(report["kernel"]["images_are_identity"] == true);
}

TEST_CASE("triangle check passes both criteria and renders text") {
  const auto twisted = invoke({"triangle", "check", "--maxk", "6", "--twisted"});
  REQUIRE(twisted.code == 0);
  const Json report = twisted.json();
  CHECK(report["criterion"] == "twisted");
  CHECK(report["criterion_holds"] == true);
  for (const auto& pair : report["pairs"]) {
    CHECK(pair["twisted_sum"] == 0);
    CHECK(pair["untwisted_sum"] == 2);
  }
  CHECK(report["bigons"]["signs"] == Json::array({1, -1}));
  CHECK(report["bigons"]["homology_rank"] == 2);

  const auto untwisted = invoke({"triangle", "check"});
  CHECK(untwisted.code == 0);
  CHECK(untwisted.json()["criterion"] == "untwisted");

  const auto text = invoke({"triangle", "check", "--format", "text"});
  REQUIRE(text.code == 0);
  CHECK(text.out.find("untwisted criterion: holds") != std::string::npos);

  CHECK(invoke({"triangle", "check", "--maxk", "0"}).code == 2);
  CHECK(invoke({"triangle", "check", "--maxk", "25"}).code == 2);
}

TEST_CASE("argument errors exit with code two") {
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"grid", "hom"}).code == 2);
  CHECK(invoke({"grid", "hom", "--file", "/nonexistent/thing.grid"}).code == 2);
  const std::string garbage = write_scratch("garbage.grid", "garbage\n");
  CHECK(invoke({"grid", "hom", "--file", garbage}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("repeated runs emit identical bytes") {
  const std::string file = unlink_grid();
  const auto first = invoke({"grid", "moves-check", "--file", file});
  const auto second = invoke({"grid", "moves-check", "--file", file});
  CHECK(first.code == second.code);
  CHECK(first.out == second.out);
  const auto text_a =
      invoke({"grid", "hom", "--file", file, "--format", "text"});
  const auto text_b =
      invoke({"grid", "hom", "--file", file, "--format", "text"});
  CHECK(text_a.out == text_b.out);
}
