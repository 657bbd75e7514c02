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

#include "castellan/castellan.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "common/error.hpp"
#include "dynamics/density.hpp"
#include "report/certificate.hpp"

struct cst_certificate {
  castellan::Json json;
};

struct cst_action {
  castellan::FinAction act;
};

namespace {

thread_local std::string g_last_error;

cst_status StatusOf(castellan::ErrorCode code) {
  using castellan::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return CST_ERR_INVALID_ARGUMENT;
    case ErrorCode::kPrecondition:
      return CST_ERR_PRECONDITION;
    case ErrorCode::kCapExceeded:
      return CST_ERR_CAP_EXCEEDED;
    case ErrorCode::kParse:
      return CST_ERR_PARSE;
    case ErrorCode::kSchema:
      return CST_ERR_SCHEMA;
    case ErrorCode::kIo:
      return CST_ERR_IO;
    case ErrorCode::kPipeline:
      return CST_ERR_PIPELINE;
  }
  return CST_ERR_INTERNAL;
}

template <typename F>
cst_status Guard(F&& body) {
  g_last_error.clear();
  try {
    body();
    return CST_OK;
  } catch (const castellan::Error& e) {
    g_last_error = e.what();
    return StatusOf(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  }
  return CST_ERR_INTERNAL;
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void NeedArg(const void* p, const char* name) {
  if (p == nullptr) {
    castellan::Fail(castellan::ErrorCode::kInvalidArgument,
                    std::string(name) + " is NULL");
  }
}

std::string ReadFile(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) castellan::Fail(castellan::ErrorCode::kIo, std::string("cannot read ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Fill(const castellan::VerifyReport& rep, cst_verify_result* result,
          char** detail) {
  result->schema_ok = rep.schema_ok;
  result->seal_ok = rep.seal_ok;
  result->semantic_ok = rep.semantic_ok;
  result->passed = rep.passed;
  result->ok = rep.ok();
  if (detail != nullptr) *detail = Dup(rep.detail);
}

cst_status Run(const castellan::ExperimentConfig& cfg, int timing,
               cst_certificate** out) {
  castellan::RunOptions opts;
  opts.timing = timing != 0;
  auto cert = std::make_unique<cst_certificate>();
  cert->json = castellan::RunConfig(cfg, opts);
  *out = cert.release();
  return CST_OK;
}

}  // namespace

extern "C" {

const char* cst_version(void) { return "0.1.0"; }

const char* cst_last_error(void) { return g_last_error.c_str(); }

void cst_string_free(char* s) { std::free(s); }

cst_status cst_run_config_file(const char* path, int timing,
                               cst_certificate** out) {
  return Guard([&] {
    NeedArg(path, "path");
    NeedArg(out, "out");
    Run(castellan::ExperimentConfig::Load(path), timing, out);
  });
}

cst_status cst_run_config_string(const char* text, int timing,
                                 cst_certificate** out) {
  return Guard([&] {
    NeedArg(text, "text");
    NeedArg(out, "out");
    Run(castellan::ExperimentConfig::Parse(text), timing, out);
  });
}

int cst_certificate_passed(const cst_certificate* cert) {
  return cert != nullptr && cert->json.value("passed", false) ? 1 : 0;
}

cst_status cst_certificate_json(const cst_certificate* cert, char** out) {
  return Guard([&] {
    NeedArg(cert, "cert");
    NeedArg(out, "out");
    *out = Dup(castellan::SerializeCertificate(cert->json));
  });
}

cst_status cst_certificate_detail(const cst_certificate* cert, char** out) {
  return Guard([&] {
    NeedArg(cert, "cert");
    NeedArg(out, "out");
    *out = Dup(cert->json.value("detail", std::string()));
  });
}

cst_status cst_certificate_write(const cst_certificate* cert, const char* path) {
  return Guard([&] {
    NeedArg(cert, "cert");
    NeedArg(path, "path");
    std::ofstream f(path, std::ios::binary);
    f << castellan::SerializeCertificate(cert->json);
    if (!f) castellan::Fail(castellan::ErrorCode::kIo, std::string("cannot write ") + path);
  });
}

void cst_certificate_free(cst_certificate* cert) { delete cert; }

cst_status cst_verify_json(const char* json, cst_verify_result* result,
                           char** detail) {
  return Guard([&] {
    NeedArg(json, "json");
    NeedArg(result, "result");
    Fill(castellan::VerifyCertificateText(json), result, detail);
  });
}

cst_status cst_verify_file(const char* path, cst_verify_result* result,
                           char** detail) {
  return Guard([&] {
    NeedArg(path, "path");
    NeedArg(result, "result");
    Fill(castellan::VerifyCertificateText(ReadFile(path)), result, detail);
  });
}

cst_status cst_export_csv(const char* cert_json, const char* series, char** csv) {
  return Guard([&] {
    NeedArg(cert_json, "cert_json");
    NeedArg(series, "series");
    NeedArg(csv, "csv");
    castellan::Json cert;
    try {
      cert = castellan::Json::parse(cert_json);
    } catch (const castellan::Json::parse_error& e) {
      castellan::Fail(castellan::ErrorCode::kSchema, e.what());
    }
    *csv = Dup(castellan::ExportCsv(cert, series));
  });
}

cst_status cst_action_cyclic(uint64_t n, cst_action** out) {
  return Guard([&] {
    NeedArg(out, "out");
    if (n == 0) castellan::Fail(castellan::ErrorCode::kInvalidArgument, "n must be positive");
    *out = new cst_action{castellan::FinAction::Cyclic(n)};
  });
}

void cst_action_free(cst_action* act) { delete act; }

cst_status cst_banach_density(const cst_action* act, const uint64_t* states,
                              size_t count, int upper, char** out) {
  return Guard([&] {
    NeedArg(act, "act");
    NeedArg(out, "out");
    if (count > 0) NeedArg(states, "states");
    std::vector<castellan::State> xs;
    for (size_t i = 0; i < count; ++i) {
      if (states[i] >= act->act.size()) {
        castellan::Fail(castellan::ErrorCode::kInvalidArgument, "state out of range");
      }
      xs.push_back(static_cast<castellan::State>(states[i]));
    }
    const auto set = castellan::StateSubset::FromStates(act->act.size(), xs);
    const castellan::Rational d = upper ? castellan::BanachUpper(set, act->act)
                                        : castellan::BanachLower(set, act->act);
    *out = Dup(castellan::FormatRational(d));
  });
}

}  // extern "C"
