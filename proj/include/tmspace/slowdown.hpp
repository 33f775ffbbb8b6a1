#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tmspace/catalog.hpp"

namespace tmspace {

enum class Aggregate : std::uint8_t { kMean, kWorstCase, kHarmonicMean, kAsymptotic };
inline constexpr std::array<Aggregate, 4> kAggregates{Aggregate::kMean, Aggregate::kWorstCase,
                                                      Aggregate::kHarmonicMean, Aggregate::kAsymptotic};
std::string to_string(Aggregate aggregate);

enum class Verdict : std::uint8_t { kSlowDown, kTie, kSpeedUp };
std::string to_string(Verdict verdict);

// Aggregates of one representative's steps over the halting probe inputs.
// kAsymptotic is the least-squares slope of steps against n over the upper
// half of those inputs (0 with fewer than two points).
double aggregate_steps(Aggregate aggregate, const std::vector<std::uint32_t>& inputs,
                       const std::vector<std::uint64_t>& steps);

struct SlowdownEntry {
  FunctionSignature signature;
  Representative small;
  Representative large;
  std::array<double, 4> small_value{};
  std::array<double, 4> large_value{};
  std::array<Verdict, 4> verdict{};
  // Largest steps_small / steps_large over halting inputs (< 1 unless some
  // input is faster in the large space).
  double max_speedup_ratio = 0;
  // Speed-up ratio never exceeds its value at the smallest input times n+1.
  bool speedup_at_most_linear = true;
};

struct SlowdownReport {
  std::vector<SlowdownEntry> entries;  // signature order
  std::array<std::uint64_t, 4> slow_down{};
  std::array<std::uint64_t, 4> ties{};
  std::array<std::uint64_t, 4> speed_up{};
  std::uint64_t superlinear_speedups = 0;
};

// Compares the fastest representative of every signature present in both
// catalogs. Throws ProbeMismatchError on incompatible catalogs.
SlowdownReport slowdown_report(const FunctionCatalog& small, const FunctionCatalog& large);

}  // namespace tmspace
