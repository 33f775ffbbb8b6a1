#include "tmspace/dimension.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tmspace/runtime_fit.hpp"

namespace tmspace {

std::vector<std::uint64_t> dyadic_sides(std::uint64_t extent) {
  std::vector<std::uint64_t> sides;
  for (std::uint64_t s = 1; s <= extent && s != 0; s *= 2) sides.push_back(s);
  return sides;
}

BoxCounter::BoxCounter(std::vector<std::uint64_t> sides) {
  for (auto s : sides) {
    if (!std::has_single_bit(s)) throw std::invalid_argument("box sides must be powers of two");
    scales_.push_back(Scale{s, 0, {}, false});
  }
}

namespace {

// Number of aligned groups of `side` bits (side <= 64) with any bit set.
std::uint64_t occupied_groups(std::uint64_t word, std::uint64_t side) {
  if (side == 1) return static_cast<std::uint64_t>(std::popcount(word));
  for (std::uint64_t s = 1; s < side; s *= 2) word |= word >> s;
  std::uint64_t mask = 0;
  for (std::uint64_t b = 0; b < 64; b += side) mask |= std::uint64_t{1} << b;
  return static_cast<std::uint64_t>(std::popcount(word & mask));
}

}  // namespace

void BoxCounter::flush(Scale& scale) {
  if (!scale.dirty) return;
  auto& words = scale.pending;
  if (scale.side <= 64) {
    for (auto w : words) scale.boxes += occupied_groups(w, scale.side);
  } else {
    const std::uint64_t span = scale.side / 64;
    for (std::size_t i = 0; i < words.size(); i += span) {
      const auto end = std::min(words.size(), static_cast<std::size_t>(i + span));
      if (std::any_of(words.begin() + static_cast<std::ptrdiff_t>(i), words.begin() + static_cast<std::ptrdiff_t>(end),
                      [](std::uint64_t w) { return w != 0; })) {
        ++scale.boxes;
      }
    }
  }
  std::fill(words.begin(), words.end(), 0);
  scale.dirty = false;
}

void BoxCounter::add_row(std::span<const Color> tape, std::int64_t head) {
  const std::size_t cells = std::max<std::size_t>(tape.size(), head >= 0 ? static_cast<std::size_t>(head) + 1 : 0);
  row_.assign((cells + 63) / 64, 0);
  for (std::size_t i = 0; i < tape.size(); ++i) {
    if (tape[i] != kWhite) row_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  if (head >= 0) row_[static_cast<std::size_t>(head) / 64] |= std::uint64_t{1} << (head % 64);

  for (auto& scale : scales_) {
    if (rows_ % scale.side == 0) flush(scale);
    if (scale.pending.size() < row_.size()) scale.pending.resize(row_.size(), 0);
    for (std::size_t i = 0; i < row_.size(); ++i) {
      scale.pending[i] |= row_[i];
      scale.dirty |= row_[i] != 0;
    }
  }
  ++rows_;
}

std::vector<BoxCount> BoxCounter::finish() {
  std::vector<BoxCount> counts;
  for (auto& scale : scales_) {
    flush(scale);
    counts.push_back({scale.side, scale.boxes});
  }
  return counts;
}

std::vector<BoxCount> box_count(const SpaceTimeDiagram& diagram, std::span<const std::uint64_t> sides) {
  BoxCounter counter({sides.begin(), sides.end()});
  for (std::uint64_t r = 0; r < diagram.height(); ++r) counter.add_row(diagram.rows[r], diagram.head_track[r]);
  return counter.finish();
}

std::vector<BoxCount> box_count(const SpaceTimeDiagram& diagram) {
  const auto sides = dyadic_sides(std::max(diagram.height(), diagram.width));
  return box_count(diagram, sides);
}

double box_dimension(std::span<const BoxCount> counts) {
  if (counts.size() < 2) throw std::invalid_argument("box dimension needs at least two scales");
  std::vector<double> x, y;
  for (const auto& c : counts) {
    if (c.boxes == 0) throw std::invalid_argument("box dimension of an empty diagram");
    x.push_back(-std::log(static_cast<double>(c.side)));
    y.push_back(std::log(static_cast<double>(c.boxes)));
  }
  return polynomial_least_squares(x, y, 1)[1];
}

std::string to_string(Trend trend) {
  switch (trend) {
    case Trend::kIncreasing: return "increasing";
    case Trend::kDecreasing: return "decreasing";
    case Trend::kStable: return "stable";
  }
  return "?";
}

NonHaltingProbeError::NonHaltingProbeError(std::uint32_t input, RunStatus status)
    : std::runtime_error("machine does not halt on input " + std::to_string(input) + " (" +
                         to_string(status) + ")"),
      input_(input) {}

RunBoxCount box_count_run(const MachineRule& rule, std::uint32_t input, std::uint64_t budget) {
  const RunOutcome outcome = run(rule, input, budget);
  if (outcome.status != RunStatus::kHalted) throw NonHaltingProbeError(input, outcome.status);
  const std::uint64_t height = outcome.steps + 1;
  BoxCounter counter(dyadic_sides(std::max(height, outcome.max_left_extent + 1)));
  run_observed(rule, input_tape(input), RunOptions{budget, false},
               [&](std::span<const Color> tape, std::int64_t head) { counter.add_row(tape, head); });
  return {height, counter.finish()};
}

DimensionEstimate fractal_dimension(const MachineRule& rule, const ProbeSet& probe) {
  probe.validate();
  DimensionEstimate estimate;
  for (auto n : probe.inputs) {
    const auto [height, counts] = box_count_run(rule, n, probe.budget);
    if (dyadic_sides(height).size() < 3) continue;
    estimate.per_input.push_back({n, height, box_dimension(counts)});
  }

  if (estimate.per_input.size() < 3) {
    estimate.degenerate = true;
    if (!estimate.per_input.empty()) estimate.extrapolated = estimate.per_input.back().slope;
    return estimate;
  }
  const auto tail = std::span(estimate.per_input).last(3);
  std::vector<double> x, y;
  for (const auto& p : tail) {
    x.push_back(1.0 / (p.input + 1.0));
    y.push_back(p.slope);
  }
  estimate.extrapolated = polynomial_least_squares(x, y, 1)[0];
  const double change = tail.back().slope - tail.front().slope;
  constexpr double kFlat = 0.005;
  estimate.trend = change > kFlat ? Trend::kIncreasing : change < -kFlat ? Trend::kDecreasing : Trend::kStable;
  return estimate;
}

}  // namespace tmspace
