#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tmspace/explorer.hpp"

namespace tmspace {

// Halting events binned by step count. Steps below `exact_limit` get one bin
// each; from there on bins are dyadic bands [2^j, 2^(j+1)).
struct HaltingHistogram {
  SpaceId space;
  ProbeSet probe;
  std::uint64_t exact_limit = 64;  // a power of two
  std::map<std::uint64_t, std::uint64_t> bins;  // bin start -> halting events
  std::uint64_t divergent = 0;
  std::uint64_t budget_exhausted = 0;
  std::uint64_t machines = 0;

  std::uint64_t halting() const;
  std::uint64_t total() const { return halting() + divergent + budget_exhausted; }
  // Exclusive end of the bin starting at `start`.
  std::uint64_t bin_end(std::uint64_t start) const;
  std::uint64_t bin_start_for(std::uint64_t steps) const;
  // Halting events with steps <= limit.
  std::uint64_t halting_within(std::uint64_t limit) const;

  friend bool operator==(const HaltingHistogram&, const HaltingHistogram&) = default;
};

class HistogramBuilder {
 public:
  HistogramBuilder(SpaceId space, ProbeSet probe, std::uint64_t exact_limit = 64);
  void add(const SweepRecord& record);
  const HaltingHistogram& histogram() const { return hist_; }

 private:
  HaltingHistogram hist_;
};

HaltingHistogram halting_histogram(const SweepResultSet& results, std::uint64_t exact_limit = 64);

// Halting counts per dyadic band [2^j, 2^(j+1)); index j is band j.
std::vector<std::uint64_t> dyadic_band_counts(const HaltingHistogram& hist);

// Strict local maxima of a sequence; plateaus count once. Endpoints qualify
// when they exceed their single neighbour.
std::size_t count_local_maxima(const std::vector<std::uint64_t>& values);

}  // namespace tmspace
