#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using namespace sympack;
using io::Json;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kFlags = R"("flags":["campana_simple","kahler"])";
const std::string kThree =
    R"({"weights":[1,2],"r":1},{"weights":[1,2],"r":1},{"weights":[1,2],"r":1})";

std::string pack_input(const std::string& manifold, const std::string& ellipsoids) {
  return R"({"manifold":)" + manifold + R"(,"ellipsoids":[)" + ellipsoids + "]}";
}

}  // namespace

TEST_CASE("pack check exit codes") {
  auto r = run({"pack", "check", "-i", pack_input(R"({"n":2,"V":2,)" + kFlags + "}", kThree)});
  CHECK(r.code == 0);
  CHECK(r.json()["verdict"] == "FEASIBLE");
  CHECK(r.err.find("FEASIBLE") != std::string::npos);

  r = run({"pack", "check", "-i",
           pack_input(R"({"n":2,"V":2,)" + kFlags + "}", kThree + "," + R"({"weights":[1,2],"r":1},{"weights":[1,2],"r":1})")});
  CHECK(r.code == 2);
  CHECK(r.json()["verdict"] == "INFEASIBLE_VOLUME");

  r = run({"pack", "check", "--quiet", "-i", pack_input(R"({"n":2,"V":2})", kThree)});
  CHECK(r.code == 3);
  CHECK(r.err.empty());
  CHECK(r.json()["missing_assumptions"].size() == 2);
}

TEST_CASE("error corpus exits 1 with distinct messages") {
  struct Case {
    std::string input;
    std::string fragment;
  };
  const std::vector<Case> corpus{
      {"{", "malformed JSON"},
      {"{\"manifold\": {\"n\": 2, \"V\": 2}, \"ellipsoids\": [}", "malformed JSON"},
      {pack_input(R"({"n":2})", kThree), "missing required key \"V\""},
      {pack_input(R"({"n":1,"V":2})", kThree), "/manifold/n"},
      {pack_input(R"({"n":2,"V":2,"flags":["symplectic"]})", kThree), "/manifold/flags/0"},
      {pack_input(R"({"n":2,"V":2})", R"({"weights":[1,2],"r":"one"})"), "/ellipsoids/0/r"},
      {pack_input(R"({"n":2,"V":2})", R"({"weights":[1,2,3],"r":1})"), "expected 2 weights"},
      {pack_input(R"({"n":2,"V":2})", R"({"weights":[1,0],"r":1})"), "invalid input"},
      {pack_input(R"({"n":2,"V":-1})", kThree), "invalid input"},
      {pack_input(R"({"n":2,"V":2})", R"({"weights":[1,2],"r":1,"extra":3})"), "unknown key \"extra\""},
      {R"({"manifold":{"n":2,"V":2},"ellipsoids":[]})", "at least 1"},
      {"[1,2]", "expected object"},
  };
  for (const auto& c : corpus) {
    CAPTURE(c.input);
    auto r = run({"pack", "check", "-i", c.input});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find(c.fragment) != std::string::npos);
  }
  CHECK(run({"pack", "check", "-i", "/nonexistent/file.json"}).code == 1);
  CHECK(run({"pack", "check"}).code == 1);
  CHECK(run({"pack"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"pack", "check", "--help"}).code == 0);
}

TEST_CASE("schema errors carry line and column") {
  const std::string text = "{\n  \"manifold\": {\"n\": 2, \"V\": 2},\n  \"ellipsoids\": [\n    {\"weights\": [1, 2], \"r\": true}\n  ]\n}\n";
  auto r = run({"pack", "check", "-i", text});
  CHECK(r.code == 1);
  CHECK(r.err.find("<inline>:4:30") != std::string::npos);

  const std::string broken = "{\n  \"manifold\": {\"n\": 2,, \"V\": 2}\n}";
  r = run({"pack", "check", "-i", broken});
  CHECK(r.err.find("<inline>:2:23") != std::string::npos);
}

TEST_CASE("document locations") {
  auto doc = io::Document::parse("{\"a\": [1, {\"b\": \"x\"}],\n \"c\": 2.5}");
  CHECK(doc.location("/a").column == 7);
  CHECK(doc.location("/a/1").column == 11);
  CHECK(doc.location("/a/1/b").column == 17);
  CHECK(doc.location("/c").line == 2);
  CHECK(doc.location("/c").column == 7);
  CHECK(doc.location("/a/1/missing").column == 11);
  CHECK(doc.scalar("/c").rational() == Rational(5, 2));
}

TEST_CASE("exact number reading") {
  auto doc = io::Document::parse(
      R"({"a": 0.1, "b": "7/3", "c": 618970019642690137449562111, "d": {"num": 3, "den": 6}, "e": 1e-3})");
  CHECK(doc.scalar("/a").rational() == Rational(1, 10));
  CHECK(doc.scalar("/b").rational() == Rational(7, 3));
  CHECK(doc.integer("/c") == BigInt("618970019642690137449562111"));
  CHECK(doc.scalar("/d").rational() == Rational(1, 2));
  CHECK(doc.scalar("/e").rational() == Rational(1, 1000));
}

TEST_CASE("certificate input round-trips") {
  const std::string input = pack_input(R"({"n":2,"V":"5/2",)" + kFlags + "}",
                                       R"({"weights":[1,1.4142135623730951],"r":0.5},{"weights":[2,3],"r":"1/3"})");
  auto first = run({"pack", "check", "--seed", "5", "--epsilon", "0.01", "-i", input});
  REQUIRE(first.code == 0);
  const Json echo = first.json()["input"];
  io::Document::parse(echo.dump()).validate(io::schema("pack_check"));
  auto second = run({"pack", "check", "-i", echo.dump()});
  CHECK(second.out == first.out);
  CHECK(second.code == first.code);
}

TEST_CASE("canonical output is byte-stable") {
  const std::vector<std::string> args{"pack", "check", "--samples", "20000", "-i",
                                      pack_input(R"({"n":2,"V":3,)" + kFlags + "}", R"({"weights":[1,1.7],"r":1})")};
  auto a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.json()["audits"].size() == 1);
  // keys are sorted
  auto j = a.json();
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(j["precision"] == io::kDecimalPrecision);
}

TEST_CASE("--output writes a file") {
  const std::string path = "sympack_cli_test_output.json";
  auto r = run({"volume", "-q", "-o", path, "-i", R"({"weights":[1,1],"r":1})"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(Json::parse(buf.str())["LEBESGUE"]["decimal"] == "0.500000000000");
  std::remove(path.c_str());
}

TEST_CASE("approx primes") {
  auto r = run({"approx", "primes", "-i", R"({"x":[2,3],"epsilon":0.5})"});
  CHECK(r.code == 0);
  CHECK(r.json()["N"] == 1);
  CHECK(r.json()["primes"] == Json::array({2, 3}));
  r = run({"approx", "primes", "-i", R"({"x":[1,2],"epsilon":0.01})"});
  CHECK(r.code == 0);
  CHECK(r.json()["checks"]["within_epsilon"] == true);
  CHECK(run({"approx", "primes", "-i", R"({"x":[1,0]})"}).code == 1);
  r = run({"approx", "primes", "--epsilon", "1e-12", "-i", R"({"x":[1.4142135623730951,1.7320508075688772]})"});
  CHECK(r.code == 0);
  // primes beyond the proven Miller-Rabin range are refused, not guessed
  r = run({"approx", "primes", "--epsilon", "1e-30", "-i", R"({"x":[1.4142135623730951,1.7320508075688772]})"});
  CHECK(r.code == 1);
  CHECK(r.err.find("resource limit") != std::string::npos);
}

TEST_CASE("calculator subcommands") {
  auto r = run({"wps", "ring", "-i", R"({"weights":[1,2,3]})"});
  REQUIRE(r.code == 0);
  bool found = false;
  const Json table = r.json()["products"];
  for (const auto& e : table)
    if (e["i"] == 1 && e["j"] == 1) {
      found = true;
      CHECK(e["degree"] == 2);
      CHECK(e["coefficient"]["num"] == 6);
    }
  CHECK(found);
  CHECK(run({"wps", "ring", "-i", R"({"weights":[2,4,3]})"}).code == 1);

  r = run({"blowup", "intersect", "-i",
           R"({"manifold":{"n":2,"V":2},"exceptional":[{"weights":[2,3],"c":"1/6"}]})"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["top_intersection"]["num"] == 11);
  CHECK(r.json()["top_intersection"]["den"] == 6);

  r = run({"volume", "-i", R"({"weights":[1,1],"r":1})"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["LEBESGUE"]["decimal"] == "0.500000000000");
  CHECK(r.json()["TOP_POWER"]["num"] == 1);
  CHECK_FALSE(r.json().contains("monte_carlo"));
  CHECK(run({"volume", "--samples", "10", "-i", R"({"weights":[1,1],"r":1})"}).code == 1);

  CHECK(run({"psh", "glue"}).code == 1);
}
