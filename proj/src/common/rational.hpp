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

#ifndef CASTELLAN_COMMON_RATIONAL_HPP_
#define CASTELLAN_COMMON_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace castellan {

// Every density, ratio and coefficient in the library is exact.
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "p", "p/q" and a leading sign. Zero denominators, blanks and
// trailing garbage are rejected with ErrorCode::kParse.
Rational ParseRational(std::string_view text);

// Canonical "p/q" form, always with an explicit denominator ("3/1", "0/1").
std::string FormatRational(const Rational& value);

// Fixed-point decimal rendering with `digits` fractional digits, truncated
// toward zero. Used for CSV export only.
std::string FormatDecimal(const Rational& value, int digits = 12);

inline Rational MakeRational(std::int64_t num, std::int64_t den = 1) {
  Rational r(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

// n-th power with a non-negative exponent.
Rational Pow(const Rational& base, unsigned exponent);

}  // namespace castellan

#endif  // CASTELLAN_COMMON_RATIONAL_HPP_
