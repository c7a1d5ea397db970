#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "morsecone.h"

using nlohmann::json;

namespace {

// Owns a string returned through the API so tests cannot leak it.
struct api_string {
  char* ptr = nullptr;
  ~api_string() { mc_string_free(ptr); }
  std::string str() const { return ptr == nullptr ? std::string() : std::string(ptr); }
};

struct api_dataset {
  mc_dataset* ptr = nullptr;
  ~api_dataset() { mc_dataset_free(ptr); }
};

const char* nilpotency_breaker =
    "schema 1\n"
    "manifold_dim 2\n"
    "ell 1\n"
    "point a 0\n"
    "point b 1\n"
    "point c 2\n"
    "boundary b a 1\n"
    "boundary c b 1\n";

}  // namespace

TEST_CASE("version and builtin enumeration") {
  CHECK(std::string(mc_version()) == "0.1.0");
  REQUIRE(mc_builtin_count() == 3);
  bool found = false;
  for (int i = 0; i < mc_builtin_count(); ++i) {
    REQUIRE(mc_builtin_name(i) != nullptr);
    if (std::string(mc_builtin_name(i)) == "t2_cos_dx") found = true;
  }
  CHECK(found);
  CHECK(mc_builtin_name(-1) == nullptr);
  CHECK(mc_builtin_name(mc_builtin_count()) == nullptr);
}

TEST_CASE("builtin datasets load and validate") {
  for (int i = 0; i < mc_builtin_count(); ++i) {
    api_dataset d;
    REQUIRE(mc_dataset_builtin(mc_builtin_name(i), &d.ptr) == MC_OK);
    CHECK(mc_dataset_validate(d.ptr) == MC_OK);
  }
  api_dataset missing;
  CHECK(mc_dataset_builtin("no_such_dataset", &missing.ptr) == MC_ERR_IO);
  CHECK(std::string(mc_last_error()).find("no_such_dataset") != std::string::npos);
}

TEST_CASE("file round trip preserves validity") {
  api_dataset d;
  REQUIRE(mc_dataset_builtin("t2_cos_dx", &d.ptr) == MC_OK);
  const char* path = "capi_roundtrip.ds";
  REQUIRE(mc_dataset_save_file(d.ptr, path) == MC_OK);
  api_dataset back;
  REQUIRE(mc_dataset_load_file(path, &back.ptr) == MC_OK);
  CHECK(mc_dataset_validate(back.ptr) == MC_OK);
  std::remove(path);

  api_dataset nope;
  CHECK(mc_dataset_load_file("does_not_exist.ds", &nope.ptr) == MC_ERR_IO);
}

TEST_CASE("string loading surfaces parse and validation failures") {
  api_dataset broken;
  CHECK(mc_dataset_load_string("schema 1\nmanifold_dim x\n", &broken.ptr) == MC_ERR_IO);
  CHECK(std::string(mc_last_error()).find("<string>:2") != std::string::npos);

  api_dataset nilbreak;
  REQUIRE(mc_dataset_load_string(nilpotency_breaker, &nilbreak.ptr) == MC_OK);
  CHECK(mc_dataset_validate(nilbreak.ptr) == MC_ERR_VALIDATION);
  CHECK(std::string(mc_last_error()).find("nilpotency") != std::string::npos);
}

TEST_CASE("cohomology report carries the torus values") {
  api_dataset d;
  REQUIRE(mc_dataset_builtin("t2_cos_dx", &d.ptr) == MC_OK);
  api_string payload;
  REQUIRE(mc_cohomology_json(d.ptr, &payload.ptr) == MC_OK);
  json j = json::parse(payload.str());

  CHECK(j.at("schema_version").get<int>() == 1);
  CHECK(j.at("mu") == json::array({1, 2, 1}));
  CHECK(j.at("classical_betti") == json::array({1, 2, 1}));
  CHECK(j.at("cup_ranks") == json::array({1, 1, 0}));

  std::vector<int> betti, dims;
  for (const auto& row : j.at("cone_degrees")) {
    betti.push_back(row.at("betti").get<int>());
    dims.push_back(row.at("dim").get<int>());
  }
  CHECK(betti == std::vector<int>{0, 1, 2, 1});
  CHECK(dims == std::vector<int>{0, 2, 4, 2});
}

TEST_CASE("corollaries report holds on builtins") {
  for (const char* name : {"s2_height_area", "t2_cos_dx", "t2_cos_zero"}) {
    api_dataset d;
    REQUIRE(mc_dataset_builtin(name, &d.ptr) == MC_OK);
    api_string payload;
    REQUIRE(mc_corollaries_json(d.ptr, &payload.ptr) == MC_OK);
    json j = json::parse(payload.str());
    CHECK(j.at("equalities").at("holds").get<bool>());
    CHECK(j.at("inequalities").at("holds").get<bool>());
    for (const auto& row : j.at("equalities").at("rows"))
      CHECK(row.at("residue").get<long>() == 0);
    for (const auto& row : j.at("inequalities").at("rows"))
      CHECK(row.at("slack").get<long>() >= 0);
  }

  api_dataset t2;
  REQUIRE(mc_dataset_builtin("t2_cos_dx", &t2.ptr) == MC_OK);
  api_string payload;
  REQUIRE(mc_corollaries_json(t2.ptr, &payload.ptr) == MC_OK);
  json j = json::parse(payload.str());
  std::vector<std::pair<int, int>> pairs;
  for (const auto& row : j.at("decomposition"))
    if (row.at("degree").get<int>() >= 0)
      pairs.emplace_back(row.at("coker").get<int>(), row.at("ker").get<int>());
  CHECK(pairs == std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {0, 1}});
}

TEST_CASE("random suite passes generated datasets") {
  api_string payload;
  REQUIRE(mc_random_suite_json(42, 10, &payload.ptr) == MC_OK);
  json j = json::parse(payload.str());
  CHECK(j.at("count").get<int>() == 10);
  CHECK(j.at("passed").get<int>() == 10);
  CHECK(j.at("failures").empty());
}

TEST_CASE("scan runs from a JSON config") {
  mc_scan* scan = nullptr;
  REQUIRE(mc_scan_run(R"({"builtin":"t2_cos_dx","n":8,"T_list":[0.5],"threads":2})",
                      &scan) == MC_OK);
  api_string csv, js;
  CHECK(mc_scan_csv(scan, &csv.ptr) == MC_OK);
  CHECK(mc_scan_json(scan, &js.ptr) == MC_OK);
  mc_scan_free(scan);

  CHECK(csv.str().rfind("T,S,degree,", 0) == 0);
  int lines = 0;
  for (char c : csv.str())
    if (c == '\n') ++lines;
  CHECK(lines == 4);

  json parsed = json::parse(js.str());
  CHECK(parsed.at("schema_version").get<int>() == 1);
  CHECK(parsed.at("rows").size() == 3);
}

TEST_CASE("scan config errors are validation failures") {
  mc_scan* scan = nullptr;
  CHECK(mc_scan_run("{\"bogus_key\":1,\"T_list\":[1]}", &scan) == MC_ERR_VALIDATION);
  CHECK(std::string(mc_last_error()).find("bogus_key") != std::string::npos);
  CHECK(mc_scan_run("not json at all", &scan) == MC_ERR_VALIDATION);
  CHECK(mc_scan_run("{}", &scan) == MC_ERR_VALIDATION);  // empty T list
  CHECK(mc_scan_run(R"({"n":"eight","T_list":[1]})", &scan) == MC_ERR_VALIDATION);
}

TEST_CASE("null arguments are rejected without crashing") {
  CHECK(mc_dataset_builtin(nullptr, nullptr) == MC_ERR_VALIDATION);
  CHECK(mc_dataset_validate(nullptr) == MC_ERR_VALIDATION);
  CHECK(mc_cohomology_json(nullptr, nullptr) == MC_ERR_VALIDATION);
  CHECK(mc_scan_csv(nullptr, nullptr) == MC_ERR_VALIDATION);
  CHECK(std::string(mc_last_error()) == "null argument");
  mc_dataset_free(nullptr);
  mc_scan_free(nullptr);
  mc_string_free(nullptr);
}
