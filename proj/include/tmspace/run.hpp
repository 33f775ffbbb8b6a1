#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmspace/configuration.hpp"
#include "tmspace/divergence.hpp"
#include "tmspace/machine.hpp"

namespace tmspace {

enum class RunStatus : std::uint8_t {
  kHalted,
  kBudgetExhausted,
  kDivergentLeftEscape,
  kDivergentCycle,
  kDivergentEdgeClosure,
  kDivergentNgramClosure,
};

std::string to_string(RunStatus status);
RunStatus parse_run_status(const std::string& text);
inline bool is_divergent(RunStatus s) {
  return s == RunStatus::kDivergentLeftEscape || s == RunStatus::kDivergentCycle ||
         s == RunStatus::kDivergentEdgeClosure || s == RunStatus::kDivergentNgramClosure;
}

struct RunOutcome {
  RunStatus status = RunStatus::kBudgetExhausted;
  std::uint64_t steps = 0;
  std::optional<OutputWord> output;  // present iff halted
  std::uint64_t max_left_extent = 0;
  std::optional<DivergenceCertificate> certificate;  // present iff divergent
};

struct RunOptions {
  std::uint64_t budget = 1'000'000;
  bool detect_divergence = true;
  // The edge-closure proof is attempted once at this step and once more when
  // the budget runs out. The n-gram closure is tried only when the budget runs
  // out.
  std::uint64_t edge_closure_step = 256;
};

namespace detail {

// Brent-style exact recurrence check: compare every configuration with a
// snapshot refreshed at power-of-two step counts. An incremental tape hash
// filters candidates; matches are confirmed cell by cell.
class ExactCycleWatch {
 public:
  explicit ExactCycleWatch(std::uint32_t colors) : colors_(colors) {}

  void on_write(std::uint64_t index, Color before, Color after) {
    if (before != kWhite) hash_ -= zobrist(index, before);
    if (after != kWhite) hash_ += zobrist(index, after);
  }
  void reset_hash(const Configuration& config);

  std::optional<CycleCertificate> observe(const Configuration& config);

 private:
  std::uint64_t zobrist(std::uint64_t index, Color c) const;
  bool same_tape(const std::vector<Color>& tape) const;

  std::uint32_t colors_;
  std::uint64_t hash_ = 0;
  std::uint64_t next_snapshot_ = 1;
  bool have_snapshot_ = false;
  std::uint64_t snap_hash_ = 0;
  std::uint64_t snap_head_ = 0;
  State snap_state_ = 0;
  std::uint64_t snap_step_ = 0;
  std::vector<Color> snap_tape_;
};

// Translated recurrence at fresh-cell records (see CycleCertificate).
class TranslatedCycleWatch {
 public:
  explicit TranslatedCycleWatch(std::uint32_t states) : refs_(states) {}

  void track_head(std::uint64_t head) {
    for (auto& r : refs_) {
      if (r.valid && head < r.min_head) r.min_head = head;
    }
  }
  // Call when the head has just entered a never-visited cell.
  std::optional<CycleCertificate> on_record(const Configuration& config);

 private:
  struct Reference {
    bool valid = false;
    std::uint64_t step = 0;
    std::uint64_t head = 0;
    std::uint64_t min_head = 0;
    std::uint64_t records = 0;
    std::vector<Color> tape;
  };
  std::vector<Reference> refs_;
};

// escape[q] holds the left-escape state chain from q, if there is one.
std::vector<std::optional<std::vector<State>>> left_escape_chains(const MachineRule& rule);

}  // namespace detail

// Simulates from `start` until halt, certified divergence, or budget.
// `observer(tape, head)` sees the start configuration and the configuration
// after every step; on the halting step head is -1 (dropped off).
template <typename Observer>
RunOutcome run_observed(const MachineRule& rule, Configuration config, const RunOptions& options,
                        Observer&& observer) {
  RunOutcome out;
  if (config.tape.empty()) config.tape.push_back(kWhite);
  observer(std::span<const Color>(config.tape), static_cast<std::int64_t>(config.head));

  std::optional<detail::ExactCycleWatch> exact;
  std::optional<detail::TranslatedCycleWatch> translated;
  std::vector<std::optional<std::vector<State>>> escape;
  if (options.detect_divergence) {
    exact.emplace(rule.space().colors);
    exact->reset_hash(config);
    translated.emplace(rule.space().states);
    escape = detail::left_escape_chains(rule);
  }

  while (config.steps < options.budget) {
    const Color before = config.tape[config.head];
    const Transition& t = rule.at(config.state, before);
    if (t.write != before) {
      config.tape[config.head] = t.write;
      if (exact) exact->on_write(config.head, before, t.write);
    }
    ++config.steps;
    config.state = t.next;
    bool fresh = false;
    if (t.move == Direction::kRight) {
      if (config.head == 0) {
        observer(std::span<const Color>(config.tape), std::int64_t{-1});
        out.status = RunStatus::kHalted;
        out.steps = config.steps;
        out.output = canonical_output(config.tape);
        out.max_left_extent = config.max_left_extent();
        return out;
      }
      --config.head;
    } else {
      ++config.head;
      if (config.head == config.tape.size()) {
        config.tape.push_back(kWhite);
        fresh = true;
      }
    }
    observer(std::span<const Color>(config.tape), static_cast<std::int64_t>(config.head));

    if (!options.detect_divergence) continue;
    translated->track_head(config.head);
    if (fresh) {
      if (const auto& chain = escape[config.state]) {
        out.status = RunStatus::kDivergentLeftEscape;
        out.certificate = LeftEscapeCertificate{config.steps, config.head, *chain};
        break;
      }
      if (auto cert = translated->on_record(config)) {
        out.status = RunStatus::kDivergentCycle;
        out.certificate = *cert;
        break;
      }
    }
    if (auto cert = exact->observe(config)) {
      out.status = RunStatus::kDivergentCycle;
      out.certificate = *cert;
      break;
    }
    if (config.steps == options.edge_closure_step) {
      if (auto cert = detect_edge_closure(config, rule)) {
        out.status = RunStatus::kDivergentEdgeClosure;
        out.certificate = *cert;
        break;
      }
    }
  }
  if (!out.certificate && options.detect_divergence && config.steps != options.edge_closure_step) {
    if (auto cert = detect_edge_closure(config, rule)) {
      out.status = RunStatus::kDivergentEdgeClosure;
      out.certificate = *cert;
    } else if (auto ngram = detect_ngram_closure(config, rule)) {
      out.status = RunStatus::kDivergentNgramClosure;
      out.certificate = *ngram;
    }
  }
  if (!out.certificate) out.status = RunStatus::kBudgetExhausted;
  out.steps = config.steps;
  out.max_left_extent = config.max_left_extent();
  return out;
}

RunOutcome run(const MachineRule& rule, const Configuration& start, const RunOptions& options);
RunOutcome run(const MachineRule& rule, std::uint32_t input, std::uint64_t budget);

}  // namespace tmspace
