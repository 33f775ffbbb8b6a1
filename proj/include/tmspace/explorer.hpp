#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmspace/machine.hpp"
#include "tmspace/run.hpp"

namespace tmspace {

struct ProbeSet {
  std::vector<std::uint32_t> inputs;  // strictly increasing, non-empty
  std::uint64_t budget = 2'000'000;
  std::vector<std::uint64_t> budget_schedule;  // escalation factors, each > 1

  // Inputs 0..count-1.
  static ProbeSet first(std::uint32_t count, std::uint64_t budget,
                        std::vector<std::uint64_t> schedule = {});
  void validate() const;
  bool same_inputs(const ProbeSet& other) const { return inputs == other.inputs; }

  friend bool operator==(const ProbeSet&, const ProbeSet&) = default;
};

// Summary of one run; the output is kept in its 0/1 wire form.
struct ProbeResult {
  RunStatus status = RunStatus::kBudgetExhausted;
  std::uint64_t steps = 0;
  std::string output;
  std::uint64_t max_left_extent = 0;

  bool halted() const { return status == RunStatus::kHalted; }
  friend bool operator==(const ProbeResult&, const ProbeResult&) = default;
};

ProbeResult summarize(const RunOutcome& outcome);

struct SweepRecord {
  RuleNumber rule = 0;
  std::vector<ProbeResult> results;  // one per probe input, in probe order

  bool any_budget_exhausted() const;
  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

// With `stop_at_exhausted` the record ends at the first input that exhausts
// the budget; such a machine is unclassified whatever the later inputs do.
SweepRecord sweep_rule(const MachineRule& rule, const ProbeSet& probe, bool stop_at_exhausted = false);

// Rules are swept and committed in contiguous ranges of this many rules.
inline constexpr std::uint64_t kRangeSize = 4096;
// Spaces at or above this many rules need SweepOptions::force.
inline constexpr std::uint64_t kFeasibilityLimit = std::uint64_t{1} << 32;

class FeasibilityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Receives committed ranges. commit() may be called from any worker thread
// but never concurrently. Ranges arrive in no particular order; each range
// holds its records sorted by rule number.
class RangeSink {
 public:
  virtual ~RangeSink() = default;
  virtual bool has_range(std::uint64_t range_index) = 0;
  virtual void commit(std::uint64_t range_index, std::span<const SweepRecord> records) = 0;
};

struct SweepOptions {
  unsigned parallelism = 1;
  CodecConvention convention{};
  bool force = false;
  // Sweep only the first this many missing ranges (0 = no limit). Used to
  // exercise interruption and resume.
  std::uint64_t max_new_ranges = 0;
  // Passed to sweep_rule by sweep_rules. Range sweeps always run every input.
  bool stop_at_exhausted = false;
  std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

struct SweepStats {
  std::uint64_t ranges_total = 0;
  std::uint64_t ranges_skipped = 0;
  std::uint64_t ranges_committed = 0;
  bool complete() const { return ranges_skipped + ranges_committed == ranges_total; }
};

std::uint64_t range_count(const SpaceId& space);
std::pair<RuleNumber, RuleNumber> range_bounds(const SpaceId& space, std::uint64_t range_index);

// Streams every range of the space not already held by `sink`.
SweepStats sweep_space(const SpaceId& space, const ProbeSet& probe, const SweepOptions& options,
                       RangeSink& sink);

// Whole space in memory, sorted by rule number.
struct SweepResultSet {
  SpaceId space;
  ProbeSet probe;
  CodecConvention convention;
  std::vector<SweepRecord> records;

  friend bool operator==(const SweepResultSet&, const SweepResultSet&) = default;
};

SweepResultSet sweep_space(const SpaceId& space, const ProbeSet& probe, const SweepOptions& options = {});

// Explicit rule list (for sub-spaces, samples and re-runs), in the given order.
SweepResultSet sweep_rules(const SpaceId& space, std::span<const RuleNumber> rules,
                           const ProbeSet& probe, const SweepOptions& options = {});

}  // namespace tmspace
