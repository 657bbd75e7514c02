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

#include "group_core/wreath.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "common/error.hpp"

namespace castellan {

ZdVector ZdVector::Unit(std::size_t dim, std::size_t j, std::int64_t n) {
  Require(j >= 1 && j <= dim, ErrorCode::kInvalidArgument,
          "lamp index " + std::to_string(j) + " outside 1.." +
              std::to_string(dim));
  ZdVector v = Zero(dim);
  v.coords_[j - 1] = n;
  return v;
}

bool ZdVector::IsZero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](std::int64_t c) { return c == 0; });
}

ZdVector& ZdVector::operator+=(const ZdVector& other) {
  Require(dim() == other.dim(), ErrorCode::kInvalidArgument,
          "lattice dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other[i];
  return *this;
}

ZdVector ZdVector::operator-() const {
  ZdVector v = *this;
  for (auto& c : v.coords_) c = -c;
  return v;
}

LampConfig::LampConfig(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.first < b.first;
                   });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first) {
      entries_.back().second += e.second;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.second.IsZero(); });
}

std::vector<LambdaElem> LampConfig::Support() const {
  std::vector<LambdaElem> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.first);
  return out;
}

ZdVector LampConfig::At(LambdaElem pos, std::size_t dim) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), pos,
      [](const Entry& e, LambdaElem p) { return e.first < p; });
  if (it != entries_.end() && it->first == pos) return it->second;
  return ZdVector::Zero(dim);
}

LampConfig& LampConfig::operator+=(const LampConfig& other) {
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() ||
        (a != entries_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      ZdVector sum = a->second + b->second;
      if (!sum.IsZero()) merged.emplace_back(a->first, std::move(sum));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
  return *this;
}

LampConfig LampConfig::operator-() const {
  LampConfig out = *this;
  for (auto& e : out.entries_) e.second = -e.second;
  return out;
}

LampConfig BetaShift(LambdaElem lambda, const LampConfig& f) {
  // Translation preserves the order of positions, so the sorted form is kept.
  std::vector<LampConfig::Entry> shifted = f.entries();
  for (auto& e : shifted) e.first = IntegerGroup::Mul(lambda, e.first);
  return LampConfig(std::move(shifted));
}

WreathElem WreathIdentity() { return {}; }

WreathElem WreathMul(const WreathElem& a, const WreathElem& b) {
  return {a.lamps + BetaShift(a.shift, b.lamps),
          IntegerGroup::Mul(a.shift, b.shift)};
}

WreathElem WreathInv(const WreathElem& a) {
  const LambdaElem inv = IntegerGroup::Inv(a.shift);
  return {-BetaShift(inv, a.lamps), inv};
}

WreathElem WreathPow(const WreathElem& a, std::int64_t n) {
  WreathElem base = n < 0 ? WreathInv(a) : a;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1
                          : static_cast<std::uint64_t>(n);
  WreathElem result;
  while (k > 0) {
    if (k & 1) result = WreathMul(result, base);
    base = WreathMul(base, base);
    k >>= 1;
  }
  return result;
}

WreathElem ShiftElem(LambdaElem delta) { return {LampConfig(), delta}; }

WreathElem XiGenerator(std::size_t d, std::size_t j, LambdaElem lambda,
                       std::int64_t n) {
  return {LampConfig({{lambda, ZdVector::Unit(d, j, n)}}), 0};
}

std::size_t WreathHash::operator()(const WreathElem& g) const {
  std::size_t h = std::hash<std::int64_t>()(g.shift);
  auto mix = [&h](std::int64_t v) {
    h ^= std::hash<std::int64_t>()(v) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  };
  for (const auto& [pos, vec] : g.lamps.entries()) {
    mix(pos);
    for (auto c : vec.coords()) mix(c);
  }
  return h;
}

std::string FormatElem(const WreathElem& g) {
  if (g.IsIdentity()) return "e";
  std::vector<std::string> factors;
  for (const auto& [pos, vec] : g.lamps.entries()) {
    for (std::size_t j = 0; j < vec.dim(); ++j) {
      if (vec[j] == 0) continue;
      std::string f = "x" + std::to_string(j + 1) + "@" + std::to_string(pos);
      if (vec[j] != 1) f += "^" + std::to_string(vec[j]);
      factors.push_back(std::move(f));
    }
  }
  if (g.shift != 0) factors.push_back(std::to_string(g.shift));
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "*";
    out += factors[i];
  }
  return out;
}

namespace {

std::int64_t ParseInt(std::string_view s, const std::string& whole) {
  std::int64_t v = 0;
  const char* begin = s.data();
  if (!s.empty() && s[0] == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    Fail(ErrorCode::kParse, "malformed group element '" + whole + "'");
  }
  return v;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

WreathElem ParseElem(const std::string& text, std::size_t d) {
  WreathElem result;
  std::string_view rest(text);
  while (true) {
    const auto star = rest.find('*');
    const std::string factor = Trim(rest.substr(0, star));
    if (factor.empty()) {
      Fail(ErrorCode::kParse, "malformed group element '" + text + "'");
    }
    WreathElem g;
    if (factor == "e") {
      g = WreathIdentity();
    } else if (factor[0] == 'x') {
      const auto at = factor.find('@');
      if (at == std::string::npos) {
        Fail(ErrorCode::kParse, "malformed group element '" + text + "'");
      }
      const auto caret = factor.find('^', at);
      const std::int64_t j =
          ParseInt(std::string_view(factor).substr(1, at - 1), text);
      const std::int64_t pos = ParseInt(
          std::string_view(factor).substr(
              at + 1, caret == std::string::npos ? std::string::npos
                                                 : caret - at - 1),
          text);
      const std::int64_t n =
          caret == std::string::npos
              ? 1
              : ParseInt(std::string_view(factor).substr(caret + 1), text);
      if (j < 1 || static_cast<std::size_t>(j) > d) {
        Fail(ErrorCode::kParse, "lamp index out of range in '" + text + "'");
      }
      g = XiGenerator(d, static_cast<std::size_t>(j), pos, n);
    } else {
      g = ShiftElem(ParseInt(factor, text));
    }
    result = WreathMul(result, g);
    if (star == std::string_view::npos) break;
    rest.remove_prefix(star + 1);
  }
  return result;
}

ElemSet MakeElemSet(std::vector<WreathElem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

ElemSet ShiftSet(const std::vector<LambdaElem>& shifts) {
  std::vector<WreathElem> out;
  for (auto s : shifts) out.push_back(ShiftElem(s));
  return MakeElemSet(std::move(out));
}

ElemSet SetProduct(const ElemSet& s, const ElemSet& t) {
  std::vector<WreathElem> out;
  out.reserve(s.size() * t.size());
  for (const auto& a : s) {
    for (const auto& b : t) out.push_back(WreathMul(a, b));
  }
  return MakeElemSet(std::move(out));
}

ElemSet InverseSet(const ElemSet& s) {
  std::vector<WreathElem> out;
  for (const auto& a : s) out.push_back(WreathInv(a));
  return MakeElemSet(std::move(out));
}

}  // namespace castellan
