#include "tmspace/run.hpp"

#include <algorithm>
#include <stdexcept>

namespace tmspace {

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kHalted: return "halted";
    case RunStatus::kBudgetExhausted: return "budget";
    case RunStatus::kDivergentLeftEscape: return "left-escape";
    case RunStatus::kDivergentCycle: return "cycle";
    case RunStatus::kDivergentEdgeClosure: return "edge-closure";
    case RunStatus::kDivergentNgramClosure: return "ngram-closure";
  }
  return "?";
}

RunStatus parse_run_status(const std::string& text) {
  if (text == "halted") return RunStatus::kHalted;
  if (text == "budget") return RunStatus::kBudgetExhausted;
  if (text == "left-escape") return RunStatus::kDivergentLeftEscape;
  if (text == "cycle") return RunStatus::kDivergentCycle;
  if (text == "edge-closure") return RunStatus::kDivergentEdgeClosure;
  if (text == "ngram-closure") return RunStatus::kDivergentNgramClosure;
  throw std::invalid_argument("unknown run status '" + text + "'");
}

namespace detail {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t ExactCycleWatch::zobrist(std::uint64_t index, Color c) const {
  return splitmix64(index * colors_ + c);
}

void ExactCycleWatch::reset_hash(const Configuration& config) {
  hash_ = 0;
  for (std::size_t i = 0; i < config.tape.size(); ++i) {
    if (config.tape[i] != kWhite) hash_ += zobrist(i, config.tape[i]);
  }
}

bool ExactCycleWatch::same_tape(const std::vector<Color>& tape) const {
  const std::size_t common = std::min(tape.size(), snap_tape_.size());
  if (!std::equal(tape.begin(), tape.begin() + static_cast<std::ptrdiff_t>(common), snap_tape_.begin())) {
    return false;
  }
  const auto& longer = tape.size() > common ? tape : snap_tape_;
  return std::all_of(longer.begin() + static_cast<std::ptrdiff_t>(common), longer.end(),
                     [](Color c) { return c == kWhite; });
}

std::optional<CycleCertificate> ExactCycleWatch::observe(const Configuration& config) {
  if (have_snapshot_ && hash_ == snap_hash_ && config.head == snap_head_ &&
      config.state == snap_state_ && same_tape(config.tape)) {
    return CycleCertificate{snap_step_, config.steps, 0, 0};
  }
  if (config.steps >= next_snapshot_) {
    have_snapshot_ = true;
    snap_hash_ = hash_;
    snap_head_ = config.head;
    snap_state_ = config.state;
    snap_step_ = config.steps;
    snap_tape_ = config.tape;
    next_snapshot_ *= 2;
  }
  return std::nullopt;
}

std::optional<CycleCertificate> TranslatedCycleWatch::on_record(const Configuration& config) {
  Reference& ref = refs_[config.state];
  if (ref.valid) {
    const std::uint64_t shift = config.head - ref.head;
    const std::uint64_t from = ref.min_head;
    bool match = true;
    for (std::uint64_t i = from; i <= ref.head; ++i) {
      if (ref.tape[i] != config.tape[i + shift]) {
        match = false;
        break;
      }
    }
    if (match) return CycleCertificate{ref.step, config.steps, shift, from};
  }
  ++ref.records;
  if (std::has_single_bit(ref.records)) {
    ref.valid = true;
    ref.step = config.steps;
    ref.head = config.head;
    ref.min_head = config.head;
    ref.tape = config.tape;
  }
  return std::nullopt;
}

std::vector<std::optional<std::vector<State>>> left_escape_chains(const MachineRule& rule) {
  std::vector<std::optional<std::vector<State>>> chains(rule.space().states);
  for (State q = 0; q < rule.space().states; ++q) {
    Configuration probe;
    probe.tape = {kWhite};
    probe.state = q;
    if (auto cert = detect_left_escape(probe, rule)) chains[q] = std::move(cert->states);
  }
  return chains;
}

}  // namespace detail

RunOutcome run(const MachineRule& rule, const Configuration& start, const RunOptions& options) {
  if (options.budget == 0) throw std::invalid_argument("run budget must be positive");
  return run_observed(rule, start, options, [](std::span<const Color>, std::int64_t) {});
}

RunOutcome run(const MachineRule& rule, std::uint32_t input, std::uint64_t budget) {
  return run(rule, input_tape(input), RunOptions{budget, true});
}

}  // namespace tmspace
