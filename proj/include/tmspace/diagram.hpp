#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tmspace/machine.hpp"
#include "tmspace/run.hpp"

namespace tmspace {

// One row per configuration, top row = input tape, bottom row = halt tape.
// Rows are indexed like the tape (0 = right edge) and may be shorter than
// `width`; missing cells are white.
struct SpaceTimeDiagram {
  std::vector<std::vector<Color>> rows;
  std::vector<std::int64_t> head_track;  // -1 on the halting row
  std::uint64_t width = 0;

  std::uint64_t height() const { return rows.size(); }
  Color cell(std::uint64_t row, std::uint64_t index) const {
    const auto& r = rows[row];
    return index < r.size() ? r[index] : kWhite;
  }
  bool occupied(std::uint64_t row, std::uint64_t index) const {
    return cell(row, index) != kWhite || head_track[row] == static_cast<std::int64_t>(index);
  }
  std::uint64_t black_cells() const;
};

class NoDiagramError : public std::runtime_error {
 public:
  explicit NoDiagramError(RunOutcome outcome);
  const RunOutcome& outcome() const { return outcome_; }

 private:
  RunOutcome outcome_;
};

// Throws NoDiagramError unless the machine halts within `budget`.
SpaceTimeDiagram record_diagram(const MachineRule& rule, std::uint32_t input, std::uint64_t budget);

}  // namespace tmspace
