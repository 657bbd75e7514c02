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

#ifndef CASTELLAN_REPORT_CERTIFICATE_HPP_
#define CASTELLAN_REPORT_CERTIFICATE_HPP_

#include <string>
#include <vector>

#include "report/config.hpp"
#include "report/serialize.hpp"

namespace castellan {

inline constexpr const char* kCertificateFormat = "castellan-certificate/1";

struct RunOptions {
  // Adds timing_ms outside the sealed payload; output is then no longer
  // byte-reproducible.
  bool timing = false;
};

// Runs a configured pipeline. Configuration problems throw (kParse or
// kSchema); failures inside the pipeline are recorded in the certificate,
// which then has passed = false.
Json RunConfig(const ExperimentConfig& cfg, const RunOptions& options = {});

// Compact, key-sorted dump of everything except seal and timing_ms.
std::string CanonicalPayload(const Json& cert);
// Pretty form written to disk.
std::string SerializeCertificate(const Json& cert);

struct VerifyReport {
  bool schema_ok = false;
  bool seal_ok = false;
  bool semantic_ok = false;  // recomputation matches every recorded field
  bool passed = false;       // recomputed pass/fail of the claim
  std::vector<std::string> mismatches;  // JSON pointers that differ
  std::string detail;

  bool ok() const { return schema_ok && seal_ok && semantic_ok && passed; }
};

// The audit path: recomputes derived fields from inputs and claim through
// checkers only and compares them with the recorded ones.
VerifyReport VerifyCertificate(const Json& cert);
VerifyReport VerifyCertificateText(const std::string& text);

std::vector<std::string> SeriesNames(const Json& cert);
// Header plus one row per entry; exact values as p/q next to a 12-digit
// decimal. Throws kInvalidArgument for an unknown series.
std::string ExportCsv(const Json& cert, const std::string& series);

}  // namespace castellan

#endif  // CASTELLAN_REPORT_CERTIFICATE_HPP_
