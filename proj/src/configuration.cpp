#include "tmspace/configuration.hpp"

#include <algorithm>
#include <stdexcept>

namespace tmspace {

Configuration input_tape(std::uint32_t n) {
  Configuration config;
  config.tape.assign(static_cast<std::size_t>(n) + 1, kBlack);
  return config;
}

std::optional<HaltEvent> apply_step(Configuration& config, const MachineRule& rule) {
  const Transition& t = rule.at(config.state, config.tape[config.head]);
  config.tape[config.head] = t.write;
  ++config.steps;
  config.state = t.next;
  if (t.move == Direction::kRight) {
    if (config.head == 0) return HaltEvent{config.tape, config.steps};
    --config.head;
  } else {
    ++config.head;
    if (config.head == config.tape.size()) config.tape.push_back(kWhite);
  }
  return std::nullopt;
}

std::variant<Configuration, HaltEvent> step(const Configuration& config, const MachineRule& rule) {
  Configuration next = config;
  if (auto halt = apply_step(next, rule)) return std::move(*halt);
  return next;
}

std::string OutputWord::to_string() const {
  std::string s;
  s.reserve(cells.size());
  for (Color c : cells) s.push_back(static_cast<char>('0' + c));
  return s;
}

OutputWord OutputWord::parse(const std::string& text) {
  OutputWord word;
  word.cells.reserve(text.size());
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("output word must be digits: '" + text + "'");
    word.cells.push_back(static_cast<Color>(ch - '0'));
  }
  if (!word.cells.empty() && word.cells.front() == kWhite) {
    throw std::invalid_argument("output word must start with a non-white cell: '" + text + "'");
  }
  return word;
}

std::size_t OutputWord::black_count() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](Color c) { return c != kWhite; }));
}

OutputWord canonical_output(std::span<const Color> tape) {
  OutputWord word;
  std::size_t top = tape.size();
  while (top > 0 && tape[top - 1] == kWhite) --top;
  word.cells.reserve(top);
  for (std::size_t i = top; i-- > 0;) word.cells.push_back(tape[i]);
  return word;
}

}  // namespace tmspace
