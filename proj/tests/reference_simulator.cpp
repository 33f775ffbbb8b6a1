#include "reference_simulator.hpp"

#include <list>
#include <map>
#include <utility>

namespace reference {

namespace {

struct Action {
  int write;
  bool right;
  int next;
};

}  // namespace

Result simulate(std::uint64_t rule, int states, int colors, int input, std::uint64_t budget) {
  const std::uint64_t base = 2ull * states * colors;
  std::map<std::pair<int, int>, Action> table;
  // The last digit belongs to the last (state, color) pair.
  std::uint64_t rest = rule;
  for (int p = states * colors - 1; p >= 0; --p) {
    const int d = static_cast<int>(rest % base);
    rest /= base;
    const int state = p / colors;
    const int color = colors - 1 - p % colors;
    table[{state, color}] = Action{(d % (2 * colors)) / 2, d % 2 == 1, d / (2 * colors)};
  }

  // tape.back() is the bounded right edge.
  std::list<int> tape(input + 1, 1);
  auto head = std::prev(tape.end());
  int state = 0;
  Result r;
  while (r.steps < budget) {
    const Action a = table.at({state, *head});
    *head = a.write;
    state = a.next;
    ++r.steps;
    if (a.right) {
      if (std::next(head) == tape.end()) {
        r.halted = true;
        break;
      }
      ++head;
    } else {
      if (head == tape.begin()) tape.push_front(0);
      --head;
    }
  }
  if (r.halted) {
    bool started = false;
    for (int c : tape) {
      if (c != 0) started = true;
      if (started) r.output += static_cast<char>('0' + c);
    }
  }
  return r;
}

}  // namespace reference
