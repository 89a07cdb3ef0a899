#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "species/cli.hpp"

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run spc(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = species::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

} // namespace

TEST_CASE("text output examples") {
  CHECK(spc({"coeffs", "E o C", "--upto", "4"}).out == "1, 1, 2, 6, 24\n");
  CHECK(spc({"iso", "P", "E*E", "--upto", "5"}).out == "isomorphic up to degree 5: true\n");
  CHECK(spc({"natcount", "C", "D(C)", "--upto", "2"}).out == "1,1,0; cumulative 0\n");
  CHECK(spc({"--upto", "3", "coeffs", "L"}).out == "1, 1, 2, 6\n");
  CHECK(spc({"egf", "C", "--upto", "3"}).out == "0, 1, 1/2, 1/3\n");
  CHECK(spc({"homday", "X", "C", "--upto", "4"}).out == "1, 1, 2, 6, 24\n");
  CHECK(spc({"terminal", "E", "--dyn", "adjL", "--upto", "3"}).out == "1, 1, 1, 1\n");
}

TEST_CASE("solve prints iterates and the verdict") {
  auto r = spc({"solve", "--op", "1 + Y(2):1", "--upto", "4"});
  CHECK(r.status == 0);
  CHECK(r.out.rfind("iterate 0: 1, 1, 1, 1, 1\n", 0) == 0);
  CHECK(r.out.find("Converged [1, 0, 0, 0, 0]") != std::string::npos);
  auto d = spc({"solve", "--op", "1 + X:1", "--upto", "4"});
  CHECK(d.out.find("Diverged at degree 2\n") != std::string::npos);
  auto m = spc({"solve", "--op", "1 + X:0", "--upto", "4", "--max-iter", "3"});
  CHECK(m.out.find("iterate 3:") != std::string::npos);
  CHECK(m.out.find("iterate 4:") == std::string::npos);
}

TEST_CASE("iso reports the first differing degree") {
  auto r = spc({"iso", "D(P)", "L*L", "--upto", "4"});
  CHECK(r.status == 0);
  CHECK(r.out.find("isomorphic up to degree 4: false\ndiffers at degree 0") == 0);
}

TEST_CASE("monoid and algebra commands") {
  auto c = spc({"monoid", "--mu", "concat", "--upto", "3"});
  CHECK(c.out.find("monoid on L: pass") != std::string::npos);
  auto u = spc({"monoid", "--mu", "union", "--upto", "3"});
  CHECK(u.out.find("monoid on P: pass") != std::string::npos);
  auto e = spc({"monoid", "--mu", "unique", "--upto", "3"});
  CHECK(e.out.find("monoid on E: pass") != std::string::npos);
  auto rv = spc({"monoid", "--mu", "concat-reverse", "--upto", "3"});
  CHECK(rv.out.find("left_unit: fails at degree 2") != std::string::npos);
  auto a = spc({"algtensor", "E", "E", "--upto", "3"});
  CHECK(a.out == "algebra on E * E up to degree 3: valid\ncarrier counts: 1, 2, 4, 8\n");
  auto one = spc({"algtensor", "1", "E", "--upto", "3"});
  CHECK(one.status == 0);
}

TEST_CASE("exit statuses") {
  CHECK(spc({"coeffs", "E o E"}).status == 1);
  auto p = spc({"coeffs", "E o "});
  CHECK(p.status == 2);
  CHECK(p.err.find("ParseError") != std::string::npos);
  CHECK(spc({"frobnicate"}).status == 2);
  CHECK(spc({}).status == 2);
  CHECK(spc({"coeffs"}).status == 2);
  CHECK(spc({"--upto", "x", "coeffs", "L"}).status == 2);
  CHECK(spc({"terminal", "L", "--dyn", "sideways"}).status == 1);
  CHECK(spc({"terminal", "E", "--dyn", "pointing"}).status == 1);
  CHECK(spc({"enumerate", "S", "9", "--limit", "100"}).status == 1);
  CHECK(spc({"--help"}).status == 0);
}

TEST_CASE("json documents") {
  auto r = spc({"--json", "natcount", "P", "D(P)", "--upto", "2"});
  REQUIRE(r.status == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "natcount");
  CHECK(doc["horizon"] == 2);
  CHECK(doc["inputs"]["source"] == "P");
  CHECK(doc["result"]["per_degree"] == nlohmann::json::array({"2", "16", "128"}));
  CHECK(doc["result"]["cumulative"] == "4096");
  CHECK(doc["diagnostics"].empty());

  auto bad = nlohmann::json::parse(spc({"--json", "coeffs", "L *"}).out);
  CHECK(bad["result"].is_null());
  REQUIRE(bad["diagnostics"].size() == 1);
  CHECK(bad["diagnostics"][0]["code"] == "ParseError");
  CHECK(bad["diagnostics"][0]["offset"] == 3);

  auto big = nlohmann::json::parse(spc({"--json", "coeffs", "adjR(L)", "--upto", "6"}).out);
  CHECK(big["result"]["coefficients"][6] == "2985984000000");
}

TEST_CASE("identical inputs give identical bytes") {
  std::vector<std::string> args{"--json", "orbits", "D(C)", "3"};
  CHECK(spc(args).out == spc(args).out);
  std::vector<std::string> s{"suite", "leibniz", "--upto", "3"};
  CHECK(spc(s).out == spc(s).out);
}
