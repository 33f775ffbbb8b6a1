#pragma once

#include <cstdint>
#include <string>

// A deliberately plain simulator used as an oracle. It decodes rule numbers
// on its own and keeps the tape as a list of cells, leftmost first.
namespace reference {

struct Result {
  bool halted = false;
  std::uint64_t steps = 0;
  std::string output;  // 0/1 digits from the leftmost black cell
};

Result simulate(std::uint64_t rule, int states, int colors, int input, std::uint64_t budget);

}  // namespace reference
