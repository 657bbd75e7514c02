// Copyright 2026 The Castellan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// castellan run <config> [-o out.json] [--timing]
// castellan verify <cert.json>
// castellan export <cert.json> --series <name> -o out.csv
//
// Exit codes: 0 pass, 1 failed certificate or check, 2 bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "castellan/castellan.h"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kBadInput = 2;

std::string Take(char* s) {
  std::string out = s ? s : "";
  cst_string_free(s);
  return out;
}

int ReportError(const char* what) {
  std::cerr << "castellan: " << what << ": " << cst_last_error() << "\n";
  return kBadInput;
}

int RunCommand(const std::string& config, const std::string& out_path,
               bool timing) {
  cst_certificate* cert = nullptr;
  if (cst_run_config_file(config.c_str(), timing ? 1 : 0, &cert) != CST_OK) {
    return ReportError("run");
  }
  const bool passed = cst_certificate_passed(cert) != 0;
  char* detail = nullptr;
  cst_certificate_detail(cert, &detail);
  const std::string why = Take(detail);
  cst_status st = CST_OK;
  if (out_path.empty() || out_path == "-") {
    char* json = nullptr;
    st = cst_certificate_json(cert, &json);
    if (st == CST_OK) std::cout << Take(json);
  } else {
    st = cst_certificate_write(cert, out_path.c_str());
  }
  cst_certificate_free(cert);
  if (st != CST_OK) return ReportError("write");
  std::cerr << (passed ? "PASS" : "FAIL") << (why.empty() ? "" : ": " + why)
            << "\n";
  return passed ? kPass : kFail;
}

int VerifyCommand(const std::string& path) {
  cst_verify_result r{};
  char* detail = nullptr;
  if (cst_verify_file(path.c_str(), &r, &detail) != CST_OK) {
    return ReportError("verify");
  }
  const std::string why = Take(detail);
  std::cout << "schema:   " << (r.schema_ok ? "ok" : "INVALID") << "\n";
  if (r.schema_ok) {
    std::cout << "seal:     " << (r.seal_ok ? "ok" : "MISMATCH") << "\n"
              << "semantic: " << (r.semantic_ok ? "ok" : "MISMATCH") << "\n"
              << "claim:    " << (r.passed ? "pass" : "fail") << "\n";
  }
  if (!why.empty()) std::cout << "detail:   " << why << "\n";
  std::cout << (r.ok ? "VERIFIED" : "REJECTED") << "\n";
  if (!r.schema_ok) return kBadInput;
  return r.ok ? kPass : kFail;
}

int ExportCommand(const std::string& path, const std::string& series,
                  const std::string& out_path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "castellan: cannot read " << path << "\n";
    return kBadInput;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  char* csv = nullptr;
  const cst_status st = cst_export_csv(ss.str().c_str(), series.c_str(), &csv);
  if (st == CST_ERR_SCHEMA) return ReportError("export");
  if (st != CST_OK) {
    std::cerr << "castellan: export: " << cst_last_error() << "\n";
    return kFail;
  }
  const std::string text = Take(csv);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return kPass;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "castellan: cannot write " << out_path << "\n";
    return kBadInput;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for castles, profinite quotients and "
               "order-zero witnesses"};
  app.set_version_flag("--version", std::string(cst_version()));
  app.require_subcommand(1);

  std::string config, out_path, cert_path, series;
  bool timing = false;

  auto* run = app.add_subcommand("run", "Run a configured pipeline");
  run->add_option("config", config, "Configuration file")->required();
  run->add_option("-o,--output", out_path, "Certificate path (default stdout)");
  run->add_flag("--timing", timing, "Record wall-clock time outside the seal");

  auto* verify = app.add_subcommand("verify", "Re-check a certificate");
  verify->add_option("certificate", cert_path, "Certificate JSON")->required();

  auto* exp = app.add_subcommand("export", "Write a certificate series as CSV");
  exp->add_option("certificate", cert_path, "Certificate JSON")->required();
  exp->add_option("--series", series, "Series name")->required();
  exp->add_option("-o,--output", out_path, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kBadInput;
  }
  if (*run) return RunCommand(config, out_path, timing);
  if (*verify) return VerifyCommand(cert_path);
  return ExportCommand(cert_path, series, out_path);
}
