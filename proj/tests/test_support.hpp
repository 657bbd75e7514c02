// Seeded generators shared by the property tests.
#ifndef CASTELLAN_TESTS_TEST_SUPPORT_HPP_
#define CASTELLAN_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "group_core/wreath.hpp"

namespace castellan::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t Int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  bool Coin() { return Int(0, 1) == 1; }
  std::mt19937_64& engine() { return engine_; }

  std::vector<std::uint32_t> Permutation(std::size_t n) {
    std::vector<std::uint32_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
    std::shuffle(p.begin(), p.end(), engine_);
    return p;
  }

  ZdVector Vector(std::size_t d, std::int64_t bound) {
    ZdVector v = ZdVector::Zero(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = Int(-bound, bound);
    return v;
  }

  LampConfig Lamps(std::size_t d, int max_support, std::int64_t window,
                   std::int64_t bound) {
    std::vector<LampConfig::Entry> entries;
    const int k = static_cast<int>(Int(0, max_support));
    for (int i = 0; i < k; ++i) {
      entries.emplace_back(Int(-window, window), Vector(d, bound));
    }
    return LampConfig(std::move(entries));
  }

  WreathElem Elem(std::size_t d, int max_support = 3,
                  std::int64_t window = 5, std::int64_t bound = 3) {
    return {Lamps(d, max_support, window, bound), Int(-window, window)};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace castellan::testing

#endif  // CASTELLAN_TESTS_TEST_SUPPORT_HPP_
