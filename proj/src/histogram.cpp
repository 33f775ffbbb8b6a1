#include "tmspace/histogram.hpp"

#include <bit>
#include <stdexcept>

namespace tmspace {

std::uint64_t HaltingHistogram::halting() const {
  std::uint64_t n = 0;
  for (const auto& [start, count] : bins) n += count;
  return n;
}

std::uint64_t HaltingHistogram::bin_start_for(std::uint64_t steps) const {
  if (steps < exact_limit) return steps;
  return std::bit_floor(steps);
}

std::uint64_t HaltingHistogram::bin_end(std::uint64_t start) const {
  if (start < exact_limit) return start + 1;
  return start * 2;
}

std::uint64_t HaltingHistogram::halting_within(std::uint64_t limit) const {
  std::uint64_t n = 0;
  for (const auto& [start, count] : bins) {
    if (bin_end(start) - 1 <= limit) {
      n += count;
    } else if (start <= limit) {
      throw std::invalid_argument("limit " + std::to_string(limit) + " splits a histogram band");
    }
  }
  return n;
}

HistogramBuilder::HistogramBuilder(SpaceId space, ProbeSet probe, std::uint64_t exact_limit) {
  if (!std::has_single_bit(exact_limit)) throw std::invalid_argument("exact_limit must be a power of two");
  hist_.space = space;
  hist_.probe = std::move(probe);
  hist_.exact_limit = exact_limit;
}

void HistogramBuilder::add(const SweepRecord& record) {
  ++hist_.machines;
  for (const auto& r : record.results) {
    if (r.halted()) {
      ++hist_.bins[hist_.bin_start_for(r.steps)];
    } else if (r.status == RunStatus::kBudgetExhausted) {
      ++hist_.budget_exhausted;
    } else {
      ++hist_.divergent;
    }
  }
}

HaltingHistogram halting_histogram(const SweepResultSet& results, std::uint64_t exact_limit) {
  HistogramBuilder builder(results.space, results.probe, exact_limit);
  for (const auto& record : results.records) builder.add(record);
  return builder.histogram();
}

std::vector<std::uint64_t> dyadic_band_counts(const HaltingHistogram& hist) {
  std::vector<std::uint64_t> bands;
  for (const auto& [start, count] : hist.bins) {
    if (start == 0) continue;  // a run always takes at least one step
    const auto band = static_cast<std::size_t>(std::bit_width(start) - 1);
    if (bands.size() <= band) bands.resize(band + 1, 0);
    bands[band] += count;
  }
  return bands;
}

std::size_t count_local_maxima(const std::vector<std::uint64_t>& values) {
  std::size_t maxima = 0;
  const std::size_t n = values.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[j + 1] == values[i]) ++j;  // plateau [i, j]
    const bool left_lower = i == 0 || values[i - 1] < values[i];
    const bool right_lower = j + 1 == n || values[j + 1] < values[i];
    const bool isolated = i == 0 && j + 1 == n;
    if (left_lower && right_lower && !isolated && values[i] > 0) ++maxima;
    i = j + 1;
  }
  return maxima;
}

}  // namespace tmspace
