#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tmspace/machine.hpp"

namespace tmspace {

// Tape cell 0 is the bounded right edge; indices grow leftward. `tape` covers
// exactly the cells visited so far, so head < tape.size() always holds and
// every cell at index >= tape.size() is white.
struct Configuration {
  std::vector<Color> tape;
  std::uint64_t head = 0;
  State state = 0;
  std::uint64_t steps = 0;

  Color read() const { return tape[head]; }
  std::uint64_t max_left_extent() const { return tape.size() - 1; }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// The head dropped off the right edge. The final write has been applied.
struct HaltEvent {
  std::vector<Color> tape;
  std::uint64_t steps = 0;
};

// Input n is n+1 black cells at the right edge; head on cell 0 in state 0.
Configuration input_tape(std::uint32_t n);

std::variant<Configuration, HaltEvent> step(const Configuration& config, const MachineRule& rule);

// In-place form of step(). On halt, `config` keeps the written tape and its
// head is left at 0.
std::optional<HaltEvent> apply_step(Configuration& config, const MachineRule& rule);

// Halt tape read from the leftmost black cell to the right edge.
struct OutputWord {
  std::vector<Color> cells;  // cells[0] is the leftmost (black) cell

  std::string to_string() const;
  static OutputWord parse(const std::string& text);
  bool empty() const { return cells.empty(); }
  std::size_t black_count() const;

  friend bool operator==(const OutputWord&, const OutputWord&) = default;
  friend auto operator<=>(const OutputWord&, const OutputWord&) = default;
};

OutputWord canonical_output(std::span<const Color> tape);

}  // namespace tmspace
