#include "tmspace/diagram.hpp"

#include <algorithm>

namespace tmspace {

std::uint64_t SpaceTimeDiagram::black_cells() const {
  std::uint64_t total = 0;
  for (const auto& row : rows) {
    total += static_cast<std::uint64_t>(std::count_if(row.begin(), row.end(), [](Color c) { return c != kWhite; }));
  }
  return total;
}

NoDiagramError::NoDiagramError(RunOutcome outcome)
    : std::runtime_error("no diagram: machine did not halt (status " + to_string(outcome.status) +
                         " after " + std::to_string(outcome.steps) + " steps)"),
      outcome_(std::move(outcome)) {}

SpaceTimeDiagram record_diagram(const MachineRule& rule, std::uint32_t input, std::uint64_t budget) {
  // Run first so that a non-halting machine does not fill memory with rows.
  RunOutcome outcome = run(rule, input, budget);
  if (outcome.status != RunStatus::kHalted) throw NoDiagramError(std::move(outcome));

  SpaceTimeDiagram diagram;
  diagram.rows.reserve(outcome.steps + 1);
  diagram.head_track.reserve(outcome.steps + 1);
  run_observed(rule, input_tape(input), RunOptions{budget, false},
               [&](std::span<const Color> tape, std::int64_t head) {
                 diagram.rows.emplace_back(tape.begin(), tape.end());
                 diagram.head_track.push_back(head);
                 diagram.width = std::max<std::uint64_t>(diagram.width, tape.size());
               });
  return diagram;
}

}  // namespace tmspace
