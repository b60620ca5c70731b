#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

namespace dynpr {

using Rng = std::mt19937_64;

/// Binomial(trials, p).
///
/// Small means use inverse transform with the pmf recurrence starting at
/// (1-p)^trials, which stays representable while trials*p is small. Larger
/// means fall back to the library sampler. p > 1/2 is reflected.
template <typename Urbg>
std::uint64_t draw_binomial(std::uint64_t trials, double p, Urbg& rng) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  if (p > 0.5) return trials - draw_binomial(trials, 1.0 - p, rng);
  const double n = static_cast<double>(trials);
  if (n * p < 30.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    const double odds = p / (1.0 - p);
    double pmf = std::pow(1.0 - p, n);
    std::uint64_t k = 0;
    while (u > pmf && k < trials) {
      u -= pmf;
      pmf *= odds * static_cast<double>(trials - k) / static_cast<double>(k + 1);
      ++k;
    }
    return k;
  }
  std::binomial_distribution<std::uint64_t> binomial(trials, p);
  return binomial(rng);
}

/// `count` distinct values from [1, range], uniformly without repetition.
///
/// Partial Fisher-Yates over the virtual array 1..range; only displaced
/// slots are materialized, so the cost is O(count) regardless of range.
template <typename Urbg>
std::vector<std::uint64_t> draw_distinct_ranks(std::uint64_t range, std::uint64_t count,
                                               Urbg& rng) {
  std::vector<std::uint64_t> picked;
  if (count == 0) return picked;
  if (count > range) count = range;
  picked.reserve(count);
  std::unordered_map<std::uint64_t, std::uint64_t> displaced;
  auto value_at = [&](std::uint64_t slot) {
    auto it = displaced.find(slot);
    return it == displaced.end() ? slot + 1 : it->second;
  };
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::uint64_t> pick(i, range - 1);
    const std::uint64_t j = pick(rng);
    const std::uint64_t chosen = value_at(j);
    displaced[j] = value_at(i);
    picked.push_back(chosen);
  }
  return picked;
}

}  // namespace dynpr
