#include "tmspace/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace tmspace {

ProbeSet ProbeSet::first(std::uint32_t count, std::uint64_t budget, std::vector<std::uint64_t> schedule) {
  ProbeSet probe;
  probe.inputs.resize(count);
  for (std::uint32_t i = 0; i < count; ++i) probe.inputs[i] = i;
  probe.budget = budget;
  probe.budget_schedule = std::move(schedule);
  probe.validate();
  return probe;
}

void ProbeSet::validate() const {
  if (inputs.empty()) throw std::invalid_argument("probe set has no inputs");
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    if (inputs[i] <= inputs[i - 1]) throw std::invalid_argument("probe inputs must be strictly increasing");
  }
  if (budget == 0) throw std::invalid_argument("probe budget must be positive");
  for (auto f : budget_schedule) {
    if (f <= 1) throw std::invalid_argument("escalation factors must exceed 1");
  }
}

ProbeResult summarize(const RunOutcome& outcome) {
  ProbeResult r;
  r.status = outcome.status;
  r.steps = outcome.steps;
  if (outcome.output) r.output = outcome.output->to_string();
  r.max_left_extent = outcome.max_left_extent;
  return r;
}

bool SweepRecord::any_budget_exhausted() const {
  return std::any_of(results.begin(), results.end(),
                     [](const ProbeResult& r) { return r.status == RunStatus::kBudgetExhausted; });
}

SweepRecord sweep_rule(const MachineRule& rule, const ProbeSet& probe, bool stop_at_exhausted) {
  SweepRecord record;
  record.rule = rule.number();
  record.results.reserve(probe.inputs.size());
  for (auto n : probe.inputs) {
    record.results.push_back(summarize(run(rule, n, probe.budget)));
    if (stop_at_exhausted && record.results.back().status == RunStatus::kBudgetExhausted) break;
  }
  return record;
}

std::uint64_t range_count(const SpaceId& space) {
  return (space.size() + kRangeSize - 1) / kRangeSize;
}

std::pair<RuleNumber, RuleNumber> range_bounds(const SpaceId& space, std::uint64_t range_index) {
  const RuleNumber first = range_index * kRangeSize;
  return {first, std::min(space.size(), first + kRangeSize)};
}

namespace {

void check_feasible(const SpaceId& space, const SweepOptions& options) {
  validate(space);
  if (!options.force && space.size() >= kFeasibilityLimit) {
    throw FeasibilityError("refusing to sweep " + space.to_string() + " with " +
                           std::to_string(space.size()) + " rules; pass force to override");
  }
}

// Runs `work(i)` for i in [0, count) on `parallelism` threads, rethrowing the
// first worker exception.
template <typename Work>
void parallel_for(std::uint64_t count, unsigned parallelism, Work&& work) {
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::uint64_t i; !stop && (i = next.fetch_add(1)) < count;) {
        if (!work(i)) stop = true;
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };
  const unsigned threads = std::max(1u, parallelism);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

SweepStats sweep_space(const SpaceId& space, const ProbeSet& probe, const SweepOptions& options,
                       RangeSink& sink) {
  check_feasible(space, options);
  probe.validate();
  SweepStats stats;
  stats.ranges_total = range_count(space);

  std::vector<std::uint64_t> pending;
  for (std::uint64_t i = 0; i < stats.ranges_total; ++i) {
    if (sink.has_range(i)) {
      ++stats.ranges_skipped;
    } else {
      pending.push_back(i);
    }
  }
  // The first missing ranges, whatever the parallelism.
  if (options.max_new_ranges && pending.size() > options.max_new_ranges) pending.resize(options.max_new_ranges);

  std::mutex commit_mutex;
  parallel_for(pending.size(), options.parallelism, [&](std::uint64_t k) {
    const std::uint64_t range = pending[k];
    const auto [first, last] = range_bounds(space, range);
    std::vector<SweepRecord> records;
    records.reserve(last - first);
    for (RuleNumber r = first; r < last; ++r) {
      records.push_back(sweep_rule(decode_rule(r, space, options.convention), probe));
    }
    std::lock_guard lock(commit_mutex);
    sink.commit(range, records);
    ++stats.ranges_committed;
    if (options.progress) options.progress(stats.ranges_skipped + stats.ranges_committed, stats.ranges_total);
    return true;
  });
  return stats;
}

namespace {

class MemorySink : public RangeSink {
 public:
  explicit MemorySink(std::vector<SweepRecord>& out) : out_(out) {}
  bool has_range(std::uint64_t) override { return false; }
  void commit(std::uint64_t range_index, std::span<const SweepRecord> records) override {
    std::copy(records.begin(), records.end(), out_.begin() + static_cast<std::ptrdiff_t>(range_index * kRangeSize));
  }

 private:
  std::vector<SweepRecord>& out_;
};

}  // namespace

SweepResultSet sweep_space(const SpaceId& space, const ProbeSet& probe, const SweepOptions& options) {
  check_feasible(space, options);
  SweepResultSet set{space, probe, options.convention, {}};
  set.records.resize(space.size());
  MemorySink sink(set.records);
  SweepOptions opts = options;
  opts.max_new_ranges = 0;
  sweep_space(space, probe, opts, sink);
  return set;
}

SweepResultSet sweep_rules(const SpaceId& space, std::span<const RuleNumber> rules,
                           const ProbeSet& probe, const SweepOptions& options) {
  probe.validate();
  SweepResultSet set{space, probe, options.convention, {}};
  set.records.resize(rules.size());
  parallel_for(rules.size(), options.parallelism, [&](std::uint64_t i) {
    set.records[i] =
        sweep_rule(decode_rule(rules[i], space, options.convention), probe, options.stop_at_exhausted);
    return true;
  });
  return set;
}

}  // namespace tmspace
