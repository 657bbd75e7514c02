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

#ifndef CASTELLAN_REPORT_PIPELINES_HPP_
#define CASTELLAN_REPORT_PIPELINES_HPP_

#include <string>

#include "report/serialize.hpp"

namespace castellan {

// Runs the construction for a pipeline and returns what it chose: a castle,
// a parameter table, the witness choices. Lives in build.cpp.
Json BuildClaim(const std::string& pipeline, const Json& inputs);

struct DeriveResult {
  Json derived;
  bool passed = false;
  std::string detail;
};

// Recomputes every reported quantity from inputs and claim with checker
// operations only. Lives in derive.cpp, which includes no builder. Throws
// on a malformed claim.
DeriveResult DeriveOutputs(const std::string& pipeline, const Json& inputs,
                           const Json& claim);

}  // namespace castellan

#endif  // CASTELLAN_REPORT_PIPELINES_HPP_
