#include <cstdint>
#include <cstring>
#include <string>

#include "doctest.h"

#include "castellan/castellan.h"

namespace {

const char* kFolner =
    "[run]\npipeline = folner\n[group]\nkind = integers\nd = 1\n"
    "[params]\nk = 1, -1\nepsilon = 1/2\n";

std::string Take(char* s) {
  std::string out = s ? s : "";
  cst_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version string") {
  CHECK(std::strlen(cst_version()) > 0);
}

TEST_CASE("run, serialize and verify through the C API") {
  cst_certificate* cert = nullptr;
  REQUIRE(cst_run_config_string(kFolner, 0, &cert) == CST_OK);
  REQUIRE(cert != nullptr);
  CHECK(cst_certificate_passed(cert) == 1);
  char* json = nullptr;
  REQUIRE(cst_certificate_json(cert, &json) == CST_OK);
  const std::string text = Take(json);
  CHECK(text.find("\"seal\"") != std::string::npos);

  cst_verify_result res{};
  char* detail = nullptr;
  REQUIRE(cst_verify_json(text.c_str(), &res, &detail) == CST_OK);
  Take(detail);
  CHECK(res.ok == 1);
  CHECK(res.schema_ok == 1);
  CHECK(res.seal_ok == 1);
  CHECK(res.semantic_ok == 1);

  std::string tampered = text;
  const auto pos = tampered.find("\"size\": 5");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 9, "\"size\": 6");
  REQUIRE(cst_verify_json(tampered.c_str(), &res, nullptr) == CST_OK);
  CHECK(res.ok == 0);
  CHECK(res.seal_ok == 0);
  cst_certificate_free(cert);
}

TEST_CASE("error statuses") {
  cst_certificate* cert = nullptr;
  CHECK(cst_run_config_string("[run]\npipeline = nope\n", 0, &cert) ==
        CST_ERR_PARSE);
  CHECK(cert == nullptr);
  CHECK(std::strlen(cst_last_error()) > 0);
  CHECK(cst_run_config_string(nullptr, 0, &cert) == CST_ERR_INVALID_ARGUMENT);
  CHECK(cst_run_config_file("/nonexistent.ini", 0, &cert) != CST_OK);
  cst_verify_result res{};
  CHECK(cst_verify_json("{}", &res, nullptr) == CST_OK);
  CHECK(res.schema_ok == 0);
  char* csv = nullptr;
  CHECK(cst_export_csv("{}", "x", &csv) != CST_OK);
}

TEST_CASE("banach density on a cycle") {
  cst_action* act = nullptr;
  REQUIRE(cst_action_cyclic(12, &act) == CST_OK);
  const std::uint64_t states[] = {0, 3, 6, 9};
  char* out = nullptr;
  REQUIRE(cst_banach_density(act, states, 4, 0, &out) == CST_OK);
  CHECK(Take(out) == "1/3");
  const std::uint64_t bad[] = {12};
  CHECK(cst_banach_density(act, bad, 1, 1, &out) == CST_ERR_INVALID_ARGUMENT);
  cst_action_free(act);
}
