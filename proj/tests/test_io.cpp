#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "hyperarr/error.hpp"
#include "hyperarr/io.hpp"

using namespace hyperarr;
using fixtures::q;

namespace {

std::filesystem::path data(const std::string& name) { return std::filesystem::path(TEST_DATA_DIR) / name; }

}  // namespace

TEST_CASE("rationals") {
  CHECK(rational_to_json(q(-1, 2)) == "-1/2");
  CHECK(rational_to_json(q(4, 2)) == "2");
  CHECK(rational_from_json(Json("3/6")) == q(1, 2));
  CHECK(rational_from_json(Json(-7)) == q(-7));
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), ParseError);
}

TEST_CASE("structured files round-trip") {
  for (const HypertetraSpec& s : {fixtures::p3_locally_free_spec(), fixtures::p5_spec(), build_extended_fermat(2, 2)}) {
    const Json j = spec_to_json(s);
    const ArrangementInput in = arrangement_from_json(Json::parse(j.dump()));
    CHECK(in.spec == s);
    CHECK(in.arrangement == realize(s));
    CHECK(spec_to_json(*in.spec).dump() == j.dump());
  }
}

TEST_CASE("explicit files round-trip") {
  for (const Arrangement& a : {fixtures::four_lines(), braid_arrangement(3), realize(fixtures::bounds_spec())}) {
    const Json j = arrangement_to_json(a);
    const ArrangementInput in = arrangement_from_json(Json::parse(j.dump()));
    CHECK(in.arrangement == a);
    CHECK(in.spec.has_value() == a.is_complete_hypertetrahedral());
  }
  CHECK(read_arrangement(data("p3_locally_free.json")).arrangement.size() == 12);
  CHECK(read_arrangement(data("four_lines.json")).arrangement == fixtures::four_lines());
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(arrangement_from_json(Json::parse(R"({"n":2,"hyperplanes":[["1","0","0"]],"extra":1})")), ParseError);
  CHECK_THROWS_AS(arrangement_from_json(Json::parse(R"({"hyperplanes":[["1","0","0"]]})")), ParseError);
  CHECK_THROWS_AS(arrangement_from_json(Json::parse(R"({"n":2,"inner":[{"i":0,"j":1,"r":1,"ai":"1","aj":"1","x":0}]})")),
                  ParseError);
  CHECK_THROWS_AS(arrangement_from_json(Json::parse(R"({"n":2,"s":{"0,1":2},"inner":[{"i":0,"j":1,"r":1,"ai":"1","aj":"1"}]})")),
                  ParseError);
  CHECK_THROWS_AS(arrangement_from_json(Json::parse(R"({"n":2,"inner":[{"i":0,"j":1,"r":2,"ai":"1","aj":"1"}]})")),
                  ParseError);
  CHECK_THROWS_AS(arrangement_from_json(Json::parse(R"({"n":2,"s":{"01":1},"inner":[]})")), ParseError);
  CHECK_THROWS_AS(arrangement_from_json(Json::parse(R"({"n":2,"hyperplanes":[["1","x","0"]]})")), ParseError);
  CHECK_THROWS_AS(arrangement_from_json(Json::parse(R"({"n":2,"inner":[{"i":0,"j":1,"r":1,"ai":"0","aj":"1"}]})")),
                  InvalidSpecError);
  CHECK_THROWS_AS(read_arrangement(data("does_not_exist.json")), ParseError);
}

TEST_CASE("polynomials serialize in monomial order") {
  const Polynomial p = Polynomial::variable(3, 2) + Polynomial::variable(3, 0) * Polynomial::variable(3, 1) * Rational(-3, 2);
  const Json j = polynomial_to_json(p);
  REQUIRE(j.size() == 2);
  CHECK(j[0]["exp"] == Json({1, 1, 0}));
  CHECK(j[0]["coef"] == "-3/2");
  CHECK(j[1]["exp"] == Json({0, 0, 1}));
}

TEST_CASE("matrix text format") {
  std::ostringstream out;
  write_matrix(out, RationalMatrix{{q(1), q(-1, 2)}, {q(0), q(3)}});
  CHECK(out.str() == "2 2\n1 -1/2\n0 3\n");
}

TEST_CASE("reports are deterministic") {
  const BoundsReport r = indeg_interval(fixtures::bounds_spec());
  const Json j = bounds_to_json(r);
  CHECK(j["D"] == 3);
  CHECK(j["interval"] == Json({4, 5}));
  CHECK(j.dump() == bounds_to_json(indeg_interval(fixtures::bounds_spec())).dump());
  const Lattice l = intersection_lattice(fixtures::four_lines());
  CHECK(lattice_to_json(l)["flats"].size() == 10);
}

TEST_CASE("gamma graphs are written one file per flat") {
  const Arrangement a = realize(fixtures::p3_locally_free_spec());
  const Lattice l = intersection_lattice(a);
  const auto dir = std::filesystem::temp_directory_path() / "hyperarr_dot_test";
  std::filesystem::remove_all(dir);
  const std::size_t n = write_gamma_dot_files(a, l, dir);
  CHECK(n > 0);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    ++files;
    CHECK(entry.path().extension() == ".dot");
    std::ifstream in(entry.path());
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("graph", 0) == 0);
  }
  CHECK(files == n);
  std::filesystem::remove_all(dir);
}
