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

#include "dynamics/folner.hpp"

#include <algorithm>
#include <bit>

#include "common/error.hpp"

namespace castellan {

Rational FolnerInvariance(const ElemSet& f, const ElemSet& k) {
  Require(!f.empty(), ErrorCode::kInvalidArgument,
          "invariance ratio needs a nonempty F");
  const ElemSet kf = SetProduct(k, f);
  ElemSet sym;
  std::set_symmetric_difference(kf.begin(), kf.end(), f.begin(), f.end(),
                                std::back_inserter(sym));
  return MakeRational(static_cast<std::int64_t>(sym.size()),
                      static_cast<std::int64_t>(f.size()));
}

ElemSet IntervalSet(std::int64_t lo, std::int64_t hi) {
  std::vector<WreathElem> out;
  for (std::int64_t x = lo; x < hi; ++x) out.push_back(ShiftElem(x));
  return out;
}

void LampBox::SetRange(std::int64_t pos, std::vector<Range> ranges) {
  Require(ranges.size() == d_, ErrorCode::kInvalidArgument,
          "lamp box range dimension mismatch");
  ranges_[pos] = std::move(ranges);
  Canonicalize();
}

std::vector<LampBox::Range> LampBox::RangeAt(std::int64_t pos) const {
  auto it = ranges_.find(pos);
  if (it != ranges_.end()) return it->second;
  return std::vector<Range>(d_, Range{0, 0});
}

void LampBox::Canonicalize() {
  std::erase_if(ranges_, [](const auto& entry) {
    return std::all_of(entry.second.begin(), entry.second.end(),
                       [](const Range& r) { return r.first == 0 && r.second == 0; });
  });
}

LampBox LampBox::Translate(const WreathElem& g) const {
  LampBox out(d_);
  for (const auto& [pos, r] : ranges_) out.ranges_[pos + g.shift] = r;
  for (const auto& [pos, vec] : g.lamps.entries()) {
    Require(vec.dim() == d_, ErrorCode::kInvalidArgument,
            "element dimension does not match the set");
    std::vector<Range> r = out.RangeAt(pos);
    for (std::size_t i = 0; i < d_; ++i) {
      r[i].first += vec[i];
      r[i].second += vec[i];
    }
    out.ranges_[pos] = std::move(r);
  }
  out.Canonicalize();
  return out;
}

std::optional<LampBox> LampBox::Intersect(const LampBox& other) const {
  LampBox out(d_);
  std::vector<std::int64_t> keys;
  for (const auto& e : ranges_) keys.push_back(e.first);
  for (const auto& e : other.ranges_) keys.push_back(e.first);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (std::int64_t pos : keys) {
    std::vector<Range> a = RangeAt(pos);
    const std::vector<Range> b = other.RangeAt(pos);
    for (std::size_t i = 0; i < d_; ++i) {
      a[i].first = std::max(a[i].first, b[i].first);
      a[i].second = std::min(a[i].second, b[i].second);
      if (a[i].first > a[i].second) return std::nullopt;
    }
    out.ranges_[pos] = std::move(a);
  }
  out.Canonicalize();
  return out;
}

BigInt LampBox::Count() const {
  BigInt total = 1;
  for (const auto& [pos, r] : ranges_) {
    for (const auto& [lo, hi] : r) total *= BigInt(static_cast<long>(hi - lo + 1));
  }
  return total;
}

bool LampBox::Contains(const LampConfig& f) const {
  for (const auto& [pos, vec] : f.entries()) {
    if (!ranges_.count(pos)) return false;
  }
  for (const auto& [pos, r] : ranges_) {
    const ZdVector v = f.At(pos, d_);
    for (std::size_t i = 0; i < d_; ++i) {
      if (v[i] < r[i].first || v[i] > r[i].second) return false;
    }
  }
  return true;
}

FiberedBoxSet FiberedBoxSet::Interval(std::size_t d, std::int64_t lo,
                                      std::int64_t hi) {
  FiberedBoxSet s(d);
  for (std::int64_t x = lo; x < hi; ++x) s.fibers_.emplace(x, LampBox(d));
  return s;
}

FiberedBoxSet FiberedBoxSet::LatticeBox(std::size_t d, std::int64_t n) {
  Require(n >= 1, ErrorCode::kInvalidArgument, "box side must be positive");
  FiberedBoxSet s(d);
  LampBox box(d);
  box.SetRange(0, std::vector<LampBox::Range>(d, {0, n - 1}));
  s.fibers_.emplace(0, std::move(box));
  return s;
}

FiberedBoxSet FiberedBoxSet::WreathBall(std::size_t d, std::int64_t r,
                                        std::int64_t m) {
  Require(r >= 0 && m >= 0, ErrorCode::kInvalidArgument,
          "ball parameters must be nonnegative");
  FiberedBoxSet s(d);
  for (std::int64_t mu = -r; mu <= r; ++mu) {
    LampBox box(d);
    for (std::int64_t pos = mu - r; pos <= mu + r; ++pos) {
      box.SetRange(pos, std::vector<LampBox::Range>(d, {-m, m}));
    }
    s.fibers_.emplace(mu, std::move(box));
  }
  return s;
}

FiberedBoxSet FiberedBoxSet::LeftTranslate(const WreathElem& g) const {
  // g·(h, μ) = (g.lamps + β_{g.shift} h, g.shift + μ).
  FiberedBoxSet out(d_);
  for (const auto& [mu, box] : fibers_) {
    out.fibers_.emplace(mu + g.shift, box.Translate(g));
  }
  return out;
}

FiberedBoxSet FiberedBoxSet::Intersect(const FiberedBoxSet& other) const {
  FiberedBoxSet out(d_);
  for (const auto& [mu, box] : fibers_) {
    auto it = other.fibers_.find(mu);
    if (it == other.fibers_.end()) continue;
    if (auto inter = box.Intersect(it->second)) {
      out.fibers_.emplace(mu, std::move(*inter));
    }
  }
  return out;
}

BigInt FiberedBoxSet::Count() const {
  BigInt total = 0;
  for (const auto& [mu, box] : fibers_) total += box.Count();
  return total;
}

bool FiberedBoxSet::Contains(const WreathElem& g) const {
  auto it = fibers_.find(g.shift);
  return it != fibers_.end() && it->second.Contains(g.lamps);
}

ElemSet FiberedBoxSet::Enumerate(std::size_t cap) const {
  Require(Count() <= BigInt(static_cast<unsigned long>(cap)),
          ErrorCode::kCapExceeded, "set too large to enumerate");
  std::vector<WreathElem> out;
  for (const auto& [mu, box] : fibers_) {
    // Odometer over every (position, coordinate) range.
    std::vector<std::pair<std::int64_t, std::size_t>> slots;
    std::vector<LampBox::Range> bounds;
    for (const auto& [pos, r] : box.ranges()) {
      for (std::size_t i = 0; i < d_; ++i) {
        slots.emplace_back(pos, i);
        bounds.push_back(r[i]);
      }
    }
    std::vector<std::int64_t> value(bounds.size());
    for (std::size_t i = 0; i < bounds.size(); ++i) value[i] = bounds[i].first;
    while (true) {
      std::vector<LampConfig::Entry> entries;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        ZdVector v = ZdVector::Zero(d_);
        v[slots[i].second] = value[i];
        entries.emplace_back(slots[i].first, std::move(v));
      }
      out.push_back({LampConfig(std::move(entries)), mu});
      std::size_t i = 0;
      while (i < value.size() && value[i] == bounds[i].second) {
        value[i] = bounds[i].first;
        ++i;
      }
      if (i == value.size()) break;
      ++value[i];
    }
  }
  return MakeElemSet(std::move(out));
}

namespace {

// |∪_i sets[i]| by inclusion–exclusion.
BigInt UnionCount(const std::vector<FiberedBoxSet>& sets) {
  const std::size_t k = sets.size();
  BigInt total = 0;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::optional<FiberedBoxSet> inter;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask & (1u << i))) continue;
      inter = inter ? inter->Intersect(sets[i]) : sets[i];
    }
    const BigInt c = inter->Count();
    if (std::popcount(mask) % 2 == 1) {
      total += c;
    } else {
      total -= c;
    }
  }
  return total;
}

}  // namespace

Rational FolnerInvariance(const FiberedBoxSet& f, const ElemSet& k) {
  const BigInt size = f.Count();
  Require(size > 0, ErrorCode::kInvalidArgument,
          "invariance ratio needs a nonempty F");
  Require(k.size() <= 16, ErrorCode::kCapExceeded,
          "inclusion-exclusion limited to |K| <= 16");
  std::vector<FiberedBoxSet> translates, overlaps;
  for (const auto& g : k) {
    translates.push_back(f.LeftTranslate(g));
    overlaps.push_back(translates.back().Intersect(f));
  }
  const BigInt kf = UnionCount(translates);
  const BigInt kf_and_f = UnionCount(overlaps);
  Rational r(kf + size - 2 * kf_and_f, size);
  r.canonicalize();
  return r;
}

const char* GroupKindName(GroupKind kind) {
  switch (kind) {
    case GroupKind::kIntegers: return "integers";
    case GroupKind::kLattice: return "lattice";
    case GroupKind::kWreath: return "wreath";
  }
  return "integers";
}

GroupKind ParseGroupKind(const std::string& name) {
  if (name == "integers") return GroupKind::kIntegers;
  if (name == "lattice") return GroupKind::kLattice;
  if (name == "wreath") return GroupKind::kWreath;
  Fail(ErrorCode::kParse, "unknown group kind '" + name + "'");
}

FolnerResult FolnerSupplier(GroupKind kind, std::size_t d, const ElemSet& k,
                            const Rational& eps, std::int64_t cap) {
  Require(eps > 0, ErrorCode::kInvalidArgument, "epsilon must be positive");
  const std::int64_t start = kind == GroupKind::kWreath ? 0 : 1;
  for (std::int64_t s = start; s <= cap; ++s) {
    FolnerResult res;
    res.kind = kind;
    res.size = s;
    switch (kind) {
      case GroupKind::kIntegers:
        res.set = FiberedBoxSet::Interval(d, 0, s);
        break;
      case GroupKind::kLattice:
        res.set = FiberedBoxSet::LatticeBox(d, s);
        break;
      case GroupKind::kWreath:
        res.lamp_bound = s * s;
        res.set = FiberedBoxSet::WreathBall(d, s, s * s);
        break;
    }
    res.ratio = FolnerInvariance(res.set, k);
    if (res.ratio < eps) {
      res.cardinality = res.set.Count();
      return res;
    }
  }
  Fail(ErrorCode::kCapExceeded,
       "no certified Følner set below the size cap " + std::to_string(cap));
}

Rational ShrinkEpsilon(std::size_t k_size, const Rational& delta) {
  Require(delta > 0, ErrorCode::kInvalidArgument, "delta must be positive");
  Rational r = delta / (Rational(2 + static_cast<long>(k_size)) + delta);
  r.canonicalize();
  return r;
}

bool ShrinkPreservesInvariance(const ElemSet& f, const ElemSet& f_sub,
                               const ElemSet& k, const Rational& delta) {
  Require(std::includes(f.begin(), f.end(), f_sub.begin(), f_sub.end()),
          ErrorCode::kInvalidArgument, "F' must be a subset of F");
  return FolnerInvariance(f_sub, k) < delta;
}

}  // namespace castellan
