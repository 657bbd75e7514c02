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

#include "report/serialize.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "common/error.hpp"
#include "group_core/elem_json.hpp"

namespace castellan {

namespace {

[[noreturn]] void Bad(const std::string& what) { Fail(ErrorCode::kSchema, what); }

}  // namespace

const Json& Field(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) Bad("missing field '" + key + "'");
  return j.at(key);
}

std::int64_t IntField(const Json& j, const std::string& key) {
  const Json& v = Field(j, key);
  if (!v.is_number_integer()) Bad("field '" + key + "' is not an integer");
  return v.get<std::int64_t>();
}

bool BoolField(const Json& j, const std::string& key) {
  const Json& v = Field(j, key);
  if (!v.is_boolean()) Bad("field '" + key + "' is not a boolean");
  return v.get<bool>();
}

std::string StringField(const Json& j, const std::string& key) {
  const Json& v = Field(j, key);
  if (!v.is_string()) Bad("field '" + key + "' is not a string");
  return v.get<std::string>();
}

Rational RationalField(const Json& j, const std::string& key) {
  return RationalFromJson(Field(j, key));
}

Json RationalToJson(const Rational& r) { return FormatRational(r); }

Rational RationalFromJson(const Json& j) {
  if (!j.is_string()) Bad("expected a rational string, got " + j.dump());
  const std::string text = j.get<std::string>();
  Rational r;
  try {
    r = ParseRational(text);
  } catch (const Error& e) {
    Bad(e.what());
  }
  // Canonical form only, so that equal values serialize identically.
  if (FormatRational(r) != text) Bad("non-canonical rational '" + text + "'");
  return r;
}

Json RationalsToJson(const std::vector<Rational>& rs) {
  Json out = Json::array();
  for (const auto& r : rs) out.push_back(RationalToJson(r));
  return out;
}

Json IntsToJson(const std::vector<std::int64_t>& v) { return Json(v); }

std::vector<std::int64_t> IntsFromJson(const Json& j) {
  if (!j.is_array()) Bad("expected an integer list");
  std::vector<std::int64_t> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) Bad("expected an integer list");
    out.push_back(e.get<std::int64_t>());
  }
  return out;
}

Json StatesToJson(const std::vector<State>& v) { return Json(v); }

std::vector<State> StatesFromJson(const Json& j, std::size_t n) {
  std::vector<State> out;
  for (auto x : IntsFromJson(j)) {
    if (x < 0 || static_cast<std::uint64_t>(x) >= n) {
      Bad("state " + std::to_string(x) + " out of range");
    }
    out.push_back(static_cast<State>(x));
  }
  return out;
}

Json CastleToJson(const Castle& c) {
  Json towers = Json::array();
  for (const auto& t : c.towers) {
    Json shape = Json::array();
    for (const auto& g : t.shape) shape.push_back(ElemToJson(g));
    towers.push_back({{"shape", shape}, {"base", StatesToJson(t.base)}});
  }
  return {{"towers", towers}};
}

Castle CastleFromJson(const Json& j, std::size_t d) {
  Castle c;
  const Json& towers = Field(j, "towers");
  if (!towers.is_array()) Bad("towers must be a list");
  for (const auto& t : towers) {
    Tower tower;
    const Json& shape = Field(t, "shape");
    if (!shape.is_array()) Bad("shape must be a list");
    for (const auto& g : shape) tower.shape.push_back(ElemFromJson(g, d));
    for (auto x : IntsFromJson(Field(t, "base"))) {
      if (x < 0) Bad("negative base state");
      tower.base.push_back(static_cast<State>(x));
    }
    c.towers.push_back(std::move(tower));
  }
  return c;
}

Json ParamTableToJson(const ParamTable& t) {
  Json out = Json::array();
  for (const auto& row : t) {
    out.push_back({{"gamma", ElemToJson(row.gamma)},
                   {"p", row.p},
                   {"eps", RationalToJson(row.eps)},
                   {"l", row.l},
                   {"a", row.a},
                   {"subgroup_index", row.index()},
                   {"e_cosets", IntsToJson(row.e_cosets)}});
  }
  return out;
}

ParamTable ParamTableFromJson(const Json& j, std::size_t d) {
  if (!j.is_array()) Bad("parameter table must be a list");
  ParamTable t;
  for (const auto& r : j) {
    GammaParams row;
    row.gamma = ElemFromJson(Field(r, "gamma"), d);
    row.p = IntField(r, "p");
    row.eps = RationalField(r, "eps");
    row.l = IntField(r, "l");
    row.a = IntField(r, "a");
    row.e_cosets = IntsFromJson(Field(r, "e_cosets"));
    if (row.p < 2 || row.a < 0 || row.a > 40 || row.l < 0) {
      Bad("parameter row out of range");
    }
    if (IntField(r, "subgroup_index") != row.index()) {
      Bad("subgroup_index disagrees with p^a");
    }
    if (r.size() != 7) Bad("unexpected field in parameter row");
    t.push_back(std::move(row));
  }
  return t;
}

std::string Sha256Hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  const bool ok = ctx != nullptr &&
                  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, md.data(), &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) Fail(ErrorCode::kIo, "SHA-256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string ActionDigest(const FinAction& act) {
  std::string bytes;
  auto put = [&bytes](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<char>(v >> (8 * i)));
  };
  put(act.size());
  put(act.dim());
  for (State x : act.shift_perm().image()) put(x);
  for (const auto& lamp : act.lamp_perms()) {
    for (State x : lamp.image()) put(x);
  }
  return Sha256Hex(bytes);
}

}  // namespace castellan
