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

#include "report/certificate.hpp"

#include <chrono>
#include <set>
#include <sstream>

#include "common/error.hpp"
#include "report/inputs.hpp"
#include "report/pipelines.hpp"

namespace castellan {

namespace {

void ValidateInputs(const std::string& pipeline, const Json& inputs) {
  if (pipeline == "folner") {
    FolnerInputs::FromJson(inputs);
  } else if (pipeline == "castle-l33") {
    L33Inputs::FromJson(inputs);
  } else if (pipeline == "castle-t34") {
    T34Inputs::FromJson(inputs);
  } else if (pipeline == "joseph-build") {
    JosephInputs::FromJson(inputs);
  } else if (pipeline == "fixed-fractions") {
    FixedFractionInputs::FromJson(inputs);
  } else if (pipeline == "zstab-witness") {
    ZstabInputs::FromJson(inputs);
  } else {
    Fail(ErrorCode::kSchema, "unknown pipeline '" + pipeline + "'");
  }
}

Json WithSeal(Json cert) {
  cert["seal"] = Sha256Hex(CanonicalPayload(cert));
  return cert;
}

}  // namespace

std::string CanonicalPayload(const Json& cert) {
  Json copy = cert;
  copy.erase("seal");
  copy.erase("timing_ms");
  return copy.dump();
}

std::string SerializeCertificate(const Json& cert) { return cert.dump(2) + "\n"; }

Json RunConfig(const ExperimentConfig& cfg, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::string& pipeline = cfg.pipeline();
  const Json inputs = InputsFromConfig(cfg);
  try {
    ValidateInputs(pipeline, inputs);
  } catch (const Error& e) {
    Fail(ErrorCode::kParse, e.what());
  }
  Json cert = {{"format", kCertificateFormat},
               {"pipeline", pipeline},
               {"inputs", inputs},
               {"claim", nullptr},
               {"derived", nullptr},
               {"passed", false},
               {"detail", ""},
               {"error_code", nullptr}};
  try {
    cert["claim"] = BuildClaim(pipeline, inputs);
    const DeriveResult d = DeriveOutputs(pipeline, inputs, cert["claim"]);
    cert["derived"] = d.derived;
    cert["passed"] = d.passed;
    cert["detail"] = d.detail;
  } catch (const Error& e) {
    cert["passed"] = false;
    cert["detail"] = e.what();
    cert["error_code"] = ErrorCodeName(e.code());
  }
  cert = WithSeal(std::move(cert));
  if (options.timing) {
    cert["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  }
  return cert;
}

VerifyReport VerifyCertificate(const Json& cert) {
  VerifyReport rep;
  static const std::set<std::string> kKeys = {
      "format", "pipeline", "inputs", "claim", "derived",
      "passed", "detail",   "error_code", "seal", "timing_ms"};
  std::string pipeline;
  try {
    if (!cert.is_object()) Fail(ErrorCode::kSchema, "certificate is not an object");
    for (const auto& [key, value] : cert.items()) {
      if (!kKeys.count(key)) Fail(ErrorCode::kSchema, "unexpected field '" + key + "'");
    }
    if (StringField(cert, "format") != kCertificateFormat) {
      Fail(ErrorCode::kSchema, "unknown certificate format");
    }
    pipeline = StringField(cert, "pipeline");
    AllowedKeys(pipeline);
    BoolField(cert, "passed");
    StringField(cert, "detail");
    StringField(cert, "seal");
    Field(cert, "inputs");
    Field(cert, "claim");
    Field(cert, "derived");
    if (!Field(cert, "error_code").is_null() && !cert["error_code"].is_string()) {
      Fail(ErrorCode::kSchema, "error_code must be null or a string");
    }
    rep.schema_ok = true;
  } catch (const Error& e) {
    rep.detail = std::string("schema: ") + e.what();
    return rep;
  }
  rep.seal_ok = cert["seal"].get<std::string>() == Sha256Hex(CanonicalPayload(cert));

  // A failed run has nothing to recompute; only its shape is checked, and
  // it is still rejected because the claim did not pass.
  if (cert["claim"].is_null()) {
    rep.semantic_ok = cert["derived"].is_null() && !cert["passed"].get<bool>() &&
                      cert["error_code"].is_string();
    rep.detail = rep.semantic_ok
                     ? "certificate records a failed run: " +
                           cert["detail"].get<std::string>()
                     : "claim is null but the certificate is not a failed run";
    if (!rep.semantic_ok) rep.mismatches.push_back("/claim");
    return rep;
  }
  try {
    const DeriveResult d = DeriveOutputs(pipeline, cert["inputs"], cert["claim"]);
    rep.passed = d.passed;
    const Json recomputed = {{"derived", d.derived},
                             {"passed", d.passed},
                             {"detail", d.detail},
                             {"error_code", nullptr}};
    const Json recorded = {{"derived", cert["derived"]},
                           {"passed", cert["passed"]},
                           {"detail", cert["detail"]},
                           {"error_code", cert["error_code"]}};
    for (const auto& op : Json::diff(recorded, recomputed)) {
      rep.mismatches.push_back(op.value("path", std::string("?")));
    }
    rep.semantic_ok = rep.mismatches.empty();
    if (!rep.semantic_ok) {
      rep.detail = "recomputation differs at " + rep.mismatches.front();
    } else if (!rep.passed) {
      rep.detail = "claim fails: " + d.detail;
    }
  } catch (const Error& e) {
    rep.semantic_ok = false;
    rep.passed = false;
    rep.detail = std::string("claim rejected: ") + e.what();
  }
  if (rep.detail.empty() && !rep.seal_ok) rep.detail = "seal mismatch";
  return rep;
}

VerifyReport VerifyCertificateText(const std::string& text) {
  Json cert;
  try {
    cert = Json::parse(text);
  } catch (const Json::parse_error& e) {
    VerifyReport rep;
    rep.detail = std::string("schema: not JSON: ") + e.what();
    return rep;
  }
  return VerifyCertificate(cert);
}

namespace {

std::string CsvCell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Decimal and exact columns for a rational field.
void AddRational(std::vector<std::string>& row, const Json& value) {
  const Rational r = RationalFromJson(value);
  row.push_back(FormatDecimal(r));
  row.push_back(FormatRational(r));
}

Table SeriesTable(const Json& cert, const std::string& series) {
  const std::string pipeline = StringField(cert, "pipeline");
  const Json& d = Field(cert, "derived");
  if (d.is_null()) Fail(ErrorCode::kInvalidArgument, "certificate has no derived data");
  Table t;
  if (pipeline == "castle-t34" && series == "stage_density") {
    t.header = {"k", "density", "density_exact", "target", "target_exact"};
    for (const auto& s : Field(d, "stages")) {
      std::vector<std::string> row{std::to_string(IntField(s, "k"))};
      AddRational(row, Field(s, "density"));
      AddRational(row, Field(s, "target"));
      t.rows.push_back(row);
    }
  } else if (pipeline == "castle-t34" && series == "folner_ratios") {
    t.header = {"index", "ratio", "ratio_exact"};
    std::int64_t i = 1;
    for (const auto& r : Field(d, "folner_ratios")) {
      std::vector<std::string> row{std::to_string(i++)};
      AddRational(row, r);
      t.rows.push_back(row);
    }
  } else if (pipeline == "fixed-fractions" && series == "fixed_fractions") {
    t.header = {"level", "size"};
    for (const auto& p : Field(d, "probes")) {
      t.header.push_back(p.get<std::string>());
      t.header.push_back(p.get<std::string>() + "_exact");
    }
    for (const auto& l : Field(d, "levels")) {
      std::vector<std::string> row{std::to_string(IntField(l, "level")),
                                   std::to_string(IntField(l, "size"))};
      for (const auto& f : Field(l, "fixed_fractions")) AddRational(row, f);
      t.rows.push_back(row);
    }
  } else if (pipeline == "zstab-witness" && series == "defect_vs_m") {
    t.header = {"m", "bound", "bound_exact"};
    for (const auto& s : Field(d, "defect_vs_m")) {
      std::vector<std::string> row{std::to_string(IntField(s, "m"))};
      AddRational(row, Field(s, "bound"));
      t.rows.push_back(row);
    }
  } else if (pipeline == "zstab-witness" && series == "defects") {
    t.header = {"element", "bound", "bound_exact", "analytic_bound",
                "analytic_bound_exact", "exact"};
    for (const auto& s : Field(d, "defects")) {
      std::vector<std::string> row{StringField(s, "element")};
      AddRational(row, Field(s, "bound"));
      AddRational(row, Field(s, "analytic_bound"));
      row.push_back(BoolField(s, "exact") ? "true" : "false");
      t.rows.push_back(row);
    }
  } else {
    std::string known;
    for (const auto& n : SeriesNames(cert)) known += (known.empty() ? "" : ", ") + n;
    Fail(ErrorCode::kInvalidArgument,
         "no series '" + series + "' in a " + pipeline +
             " certificate (available: " + (known.empty() ? "none" : known) + ")");
  }
  return t;
}

}  // namespace

std::vector<std::string> SeriesNames(const Json& cert) {
  const std::string pipeline = cert.value("pipeline", std::string());
  if (pipeline == "castle-t34") return {"stage_density", "folner_ratios"};
  if (pipeline == "fixed-fractions") return {"fixed_fractions"};
  if (pipeline == "zstab-witness") return {"defect_vs_m", "defects"};
  return {};
}

std::string ExportCsv(const Json& cert, const std::string& series) {
  const Table t = SeriesTable(cert, series);
  std::ostringstream out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "," : "") << CsvCell(cells[i]);
    }
    out << "\n";
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return out.str();
}

}  // namespace castellan
