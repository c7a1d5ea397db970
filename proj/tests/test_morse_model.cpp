#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <sstream>
#include <string>

#include "common/errors.hpp"
#include "core/cone.hpp"
#include "morse/morse_data.hpp"

using namespace morsecone;

namespace {

bool throws_containing(const std::function<void()>& f, const std::string& needle) {
  try {
    f();
  } catch (const std::exception& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

std::vector<int> cone_betti(const morse_data& d) {
  chain_map_pair p = to_chain_map_pair(d);
  graded_complex cone = mapping_cone(p);
  graded_ints b = cohomology_dims(cone);
  std::vector<int> out;
  for (int k = cone.min_deg(); k <= cone.max_deg(); ++k) out.push_back(b.at(k));
  return out;
}

}  // namespace

TEST_CASE("builtins validate and report the frozen cone cohomology") {
  // Expected values derived by hand from the de Rham picture upstairs and
  // frozen here; the library must reproduce them from pure bookkeeping.
  for (const auto& name : builtin_names()) CHECK_NOTHROW(validate(builtin_dataset(name)));

  SUBCASE("sphere with its area form") {
    // Wedging the normalized area form is an isomorphism H^0 -> H^2, so the
    // cone keeps only the ends: degrees (-1..3) carry (0, 1, 0, 0, 1).
    morse_data d = builtin_dataset("s2_height_area");
    CHECK(mu_counts(d) == std::vector<int>{1, 0, 1});
    CHECK(cone_betti(d) == std::vector<int>{0, 1, 0, 0, 1});
    auto parts = decompose_cohomology(to_chain_map_pair(d));
    REQUIRE(parts.size() == 5);
    CHECK(parts[1].coker_dim == 1);  // degree 0
    CHECK(parts[1].ker_dim == 0);
    CHECK(parts[4].coker_dim == 0);  // degree 3
    CHECK(parts[4].ker_dim == 1);
  }

  SUBCASE("torus with dx") {
    // Wedge-dx has rank 1 on H^0 -> H^1 and on H^1 -> H^2; the cone carries
    // (1, 2, 1) in degrees 0..2 and nothing at -1.
    morse_data d = builtin_dataset("t2_cos_dx");
    CHECK(mu_counts(d) == std::vector<int>{1, 2, 1});
    CHECK(cone_betti(d) == std::vector<int>{0, 1, 2, 1});
    auto parts = decompose_cohomology(to_chain_map_pair(d));
    REQUIRE(parts.size() == 4);
    CHECK(parts[1].coker_dim == 1);
    CHECK(parts[1].ker_dim == 0);
    CHECK(parts[2].coker_dim == 1);
    CHECK(parts[2].ker_dim == 1);
    CHECK(parts[3].coker_dim == 0);
    CHECK(parts[3].ker_dim == 1);
  }

  SUBCASE("torus with the zero form") {
    // Zero cone map: the cone is the direct sum of two shifted copies, so
    // every betti number doubles.
    morse_data d = builtin_dataset("t2_cos_zero");
    CHECK(cone_betti(d) == std::vector<int>{0, 2, 4, 2});
  }

  SUBCASE("equalities and inequalities hold on every builtin") {
    for (const auto& name : builtin_names()) {
      chain_map_pair p = to_chain_map_pair(builtin_dataset(name));
      CHECK(morse_equalities(p).holds);
      CHECK(morse_inequalities(p).holds);
    }
  }
}

TEST_CASE("unknown builtin name is an io error") {
  CHECK_THROWS_AS(builtin_dataset("nope"), io_error);
}

TEST_CASE("validation rejects structural garbage with specific messages") {
  morse_data d = builtin_dataset("t2_cos_dx");

  SUBCASE("duplicate point id") {
    d.points.push_back({"s_x", 1, std::nullopt});
    CHECK(throws_containing([&] { validate(d); }, "duplicate point id 's_x'"));
  }
  SUBCASE("index out of range") {
    d.points.push_back({"bad", 7, std::nullopt});
    CHECK(throws_containing([&] { validate(d); }, "index 7 outside [0, 2]"));
  }
  SUBCASE("unknown point in an entry") {
    d.boundary.push_back({"ghost", "m", rat(1)});
    CHECK(throws_containing([&] { validate(d); }, "unknown point"));
  }
  SUBCASE("boundary entry with the wrong index step") {
    d.boundary.push_back({"M", "m", rat(1)});
    CHECK(throws_containing([&] { validate(d); }, "grading violation"));
  }
  SUBCASE("cup entry with the wrong index step") {
    d.cup.push_back({"M", "m", rat(1)});
    CHECK(throws_containing([&] { validate(d); }, "grading violation"));
  }
  SUBCASE("ell out of range") {
    d.ell = 5;
    CHECK(throws_containing([&] { validate(d); }, "ell 5 outside [0, 2]"));
  }
  SUBCASE("boundary fails to square to zero, named by points") {
    // m -> s_x -> M with unit weights: (M, m) entry of the square is 1.
    d.boundary = {{"s_x", "m", rat(1)}, {"M", "s_x", rat(1)}};
    d.cup.clear();
    CHECK(throws_containing([&] { validate(d); }, "nilpotency violation at ('M', 'm')"));
  }
  SUBCASE("anticommutation failure is reported with the degree") {
    // Boundary m -> s_x + s_y dies in the square (no further boundary), but
    // the cup map sends s_y to M while m maps to nothing under cup then
    // boundary, so partial cup != -cup partial at degree 0.
    d.boundary = {{"s_x", "m", rat(1)}, {"s_y", "m", rat(-1)}};
    d.cup = {{"M", "s_y", rat(1)}};
    CHECK(throws_containing([&] { validate(d); }, "anticommutation violation at degree 0"));
  }
}

TEST_CASE("declaration order fixes the matrix layout") {
  morse_data d;
  d.m = 1;
  d.ell = 0;
  d.points = {{"a", 0, std::nullopt}, {"b", 0, std::nullopt}, {"x", 1, std::nullopt}};
  d.boundary = {{"x", "b", rat(2)}, {"x", "a", rat(3)}};
  chain_map_pair p = to_chain_map_pair(d);
  REQUIRE(p.mu == std::vector<int>{2, 1});
  CHECK(p.partial[0].at(0, 0) == rat(3));
  CHECK(p.partial[0].at(0, 1) == rat(2));
}

TEST_CASE("repeated entries accumulate") {
  morse_data d;
  d.m = 1;
  d.ell = 1;
  d.points = {{"a", 0, std::nullopt}, {"x", 1, std::nullopt}};
  d.cup = {{"x", "a", rat(1)}, {"x", "a", rat(1, 2)}};
  chain_map_pair p = to_chain_map_pair(d);
  CHECK(p.cone_map[0].at(0, 0) == rat(3, 2));
}

TEST_CASE("text round-trip preserves the dataset") {
  for (const auto& name : builtin_names()) {
    morse_data d = builtin_dataset(name);
    std::ostringstream out;
    save_dataset(d, out);
    std::istringstream in(out.str());
    morse_data back = load_dataset(in, name);
    CHECK(back.m == d.m);
    CHECK(back.ell == d.ell);
    REQUIRE(back.points.size() == d.points.size());
    for (size_t i = 0; i < d.points.size(); ++i) {
      CHECK(back.points[i].id == d.points[i].id);
      CHECK(back.points[i].index == d.points[i].index);
      CHECK(back.points[i].value == d.points[i].value);
    }
    REQUIRE(back.cup.size() == d.cup.size());
    for (size_t i = 0; i < d.cup.size(); ++i) {
      CHECK(back.cup[i].to == d.cup[i].to);
      CHECK(back.cup[i].from == d.cup[i].from);
      CHECK(back.cup[i].coeff == d.cup[i].coeff);
    }
    CHECK(back.boundary.size() == d.boundary.size());
  }
}

TEST_CASE("parser details") {
  SUBCASE("comments, blank lines, and coefficient normalization") {
    std::istringstream in(
        "# a dataset\n"
        "schema 1\n"
        "manifold_dim 1   # with a trailing comment\n"
        "ell 1\n"
        "\n"
        "point a 0 -1/2\n"
        "point x 1\n"
        "cup x a 2/4\n");
    morse_data d = load_dataset(in, "inline");
    CHECK(d.m == 1);
    CHECK(d.points.size() == 2);
    REQUIRE(d.points[0].value.has_value());
    CHECK(*d.points[0].value == rat(-1, 2));
    REQUIRE(d.cup.size() == 1);
    CHECK(rat_to_string(d.cup[0].coeff) == "1/2");
  }

  SUBCASE("load does not validate") {
    // Grading is broken (cup steps by 1 with ell = 0) but loading accepts
    // it; only validate() complains.
    std::istringstream in(
        "schema 1\nmanifold_dim 1\nell 0\npoint a 0\npoint x 1\ncup x a 1\n");
    morse_data d = load_dataset(in, "inline");
    CHECK(throws_containing([&] { validate(d); }, "grading violation"));
  }

  SUBCASE("diagnostics carry origin and line number") {
    std::istringstream in("schema 1\nmanifold_dim 1\nell 0\npoint a zero\n");
    CHECK(throws_containing([&] { load_dataset(in, "weird.ds"); }, "weird.ds:4"));
  }
  SUBCASE("duplicate point id is a parse error naming the id") {
    std::istringstream in("schema 1\nmanifold_dim 1\nell 0\npoint a 0\npoint a 0\n");
    CHECK(throws_containing([&] { load_dataset(in, "dup.ds"); }, "duplicate point id 'a'"));
  }
  SUBCASE("entries must follow their points") {
    std::istringstream in("schema 1\nmanifold_dim 1\nell 0\nboundary x a 1\n");
    CHECK(throws_containing([&] { load_dataset(in, "fwd.ds"); }, "undeclared point 'x'"));
  }
  SUBCASE("unknown directive") {
    std::istringstream in("schema 1\nmanifold_dim 1\nell 0\nvertex a 0\n");
    CHECK(throws_containing([&] { load_dataset(in, "bad.ds"); }, "unknown directive 'vertex'"));
  }
  SUBCASE("missing header directives") {
    std::istringstream in("manifold_dim 1\nell 0\n");
    CHECK(throws_containing([&] { load_dataset(in, "nohdr.ds"); }, "missing 'schema'"));
  }
  SUBCASE("unsupported schema") {
    std::istringstream in("schema 2\nmanifold_dim 1\nell 0\n");
    CHECK(throws_containing([&] { load_dataset(in, "v2.ds"); }, "unsupported schema version 2"));
  }
  SUBCASE("trailing tokens are rejected") {
    std::istringstream in("schema 1 extra\n");
    CHECK(throws_containing([&] { load_dataset(in, "t.ds"); }, "trailing token 'extra'"));
  }
  SUBCASE("malformed coefficient") {
    std::istringstream in("schema 1\nmanifold_dim 1\nell 0\npoint a 0\npoint b 0\n");
    morse_data ok = load_dataset(in, "ok.ds");
    CHECK(ok.points.size() == 2);
    std::istringstream bad(
        "schema 1\nmanifold_dim 1\nell 1\npoint a 0\npoint x 1\ncup x a 1.5\n");
    CHECK(throws_containing([&] { load_dataset(bad, "c.ds"); }, "c.ds:6"));
  }
}
