#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <string>

#include "bollobas/bollobas.h"

using nlohmann::json;

namespace {
json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  bl_string_free(s);
  return j;
}

struct Op {
  bl_operator* p = nullptr;
  ~Op() { bl_operator_free(p); }
};
}  // namespace

TEST_CASE("library basics") {
  CHECK(std::string(bl_version()) == "1.0.0");
  CHECK(std::string(bl_probe_csv_header()) == "epsilon,eta_hat,slack,distance,dim,seed,mode,status");
  char* ids = nullptr;
  REQUIRE(bl_gallery_ids(&ids) == BL_OK);
  json j = take(ids);
  CHECK(j.size() == 9);
  bl_set_threads(2);
  CHECK(bl_threads() == 2);
  bl_set_threads(0);
}

TEST_CASE("operators from URIs and JSON") {
  Op a;
  REQUIRE(bl_operator_from_uri("gallery:G-SHIFT?dim=3", 0, &a.p) == BL_OK);
  CHECK(bl_operator_domain_dim(a.p) == 3);
  double x[3] = {1, 2, 3}, y[3] = {0, 0, 0};
  REQUIRE(bl_operator_apply(a.p, x, nullptr, 3, y, nullptr, 3) == BL_OK);
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 1.0);
  CHECK(y[2] == 2.0);
  CHECK(bl_operator_apply(a.p, x, nullptr, 2, y, nullptr, 3) == BL_ERR_DIMENSION);

  Op b;
  REQUIRE(bl_operator_from_json(R"({"kind": "diagonal", "alpha": [1, 0.5], "space": {"p": 2, "dim": 2}})", 0, &b.p) ==
          BL_OK);
  char* out = nullptr;
  REQUIRE(bl_norm(b.p, R"({"norming_set": true})", &out) == BL_OK);
  json n = take(out);
  CHECK(n["value"] == 1.0);
  CHECK(n["certainty"] == "exact");
  CHECK(n["norming_set"]["kind"] == "support_constrained");

  REQUIRE(bl_operator_describe(b.p, &out) == BL_OK);
  CHECK(take(out)["realizable"] == true);
}

TEST_CASE("error codes") {
  Op a;
  CHECK(bl_operator_from_json("{bad", 0, &a.p) == BL_ERR_PARSE);
  CHECK(std::string(bl_last_error()).find("malformed") != std::string::npos);
  CHECK(bl_operator_from_uri("gallery:NOPE?dim=4", 0, &a.p) == BL_ERR_UNKNOWN);
  CHECK(bl_operator_from_uri("gallery:G-SKEW?dim=2", 0, &a.p) == BL_ERR_DIMENSION);
  CHECK(bl_operator_from_uri("gallery:G-SHIFT", 0, nullptr) == BL_ERR_INVALID);
  CHECK(a.p == nullptr);
  char* out = nullptr;
  CHECK(bl_gallery_run("NOPE", "{}", &out) == BL_ERR_UNKNOWN);
  CHECK(bl_transfer(R"({"direction": "norm_to_lift_nu", "outer_p": 1, "eps": [0.1],
                        "operator": {"kind": "diagonal", "alpha": [1, 1], "space": {"p": 1, "dim": 2}}})",
                    &out) == BL_ERR_GEOMETRY);
  CHECK(bl_member(R"({"predicate": "diag_norm", "family": "l2", "spec": {"prefix": [0.5]}})", &out) ==
        BL_ERR_NOT_NORMALIZED);
  CHECK(bl_member(R"({"predicate": "sorcery"})", &out) == BL_ERR_UNKNOWN);
  bl_string_free(nullptr);
}

TEST_CASE("probe and validate") {
  Op a;
  REQUIRE(bl_operator_from_uri("gallery:G-BLOCK?dim=4", 0, &a.p) == BL_OK);
  char* out = nullptr;
  REQUIRE(bl_probe(a.p, R"({"eps": [0.5], "restarts": 8, "iterations": 200, "header": true})", &out) == BL_OK);
  std::string csv = out;
  bl_string_free(out);
  CHECK(csv.rfind("epsilon,eta_hat", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

  REQUIRE(bl_validate(a.p, R"({"eta": 0.5, "eps": [0.5], "restarts": 8, "iterations": 200})", &out) == BL_OK);
  json v = take(out);
  CHECK(v["pass"] == false);
}

TEST_CASE("member, gallery, transfer, moduli") {
  char* out = nullptr;
  REQUIRE(bl_member(R"({"predicate": "diag_norm", "family": "c0",
                        "spec": {"prefix": [1], "tail": {"kind": "approach", "c": 1}}, "materialize": [8, 16]})",
                    &out) == BL_OK);
  json m = take(out);
  CHECK(m["member"] == false);
  CHECK(m["materialized"].size() == 2);
  CHECK(m["materialized"][1]["decay"].get<double>() == doctest::Approx(1.0 / 16));

  REQUIRE(bl_gallery_run("G-SKEW", R"({"dims": [8]})", &out) == BL_OK);
  json g = take(out);
  CHECK(g["pass"] == true);

  REQUIRE(bl_transfer(R"({"direction": "psum", "outer_p": 2, "dim": 2})", &out) == BL_OK);
  CHECK(take(out)["nu"].get<double>() == doctest::Approx(0.5));

  REQUIRE(bl_transfer(R"({"direction": "rank1_l1", "eps": [0.2]})", &out) == BL_OK);
  CHECK(take(out)["rows"][0]["eta"].get<double>() == doctest::Approx(0.1));

  REQUIRE(bl_moduli(R"({"space": {"p": 2}, "eps": [1, 2]})", &out) == BL_OK);
  json d = take(out);
  CHECK(d["rows"][0]["delta"].get<double>() == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0));
  CHECK(d["rows"][1]["delta"].get<double>() == doctest::Approx(1.0));
}
