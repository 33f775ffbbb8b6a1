#include "tmspace/machine.hpp"

#include <limits>
#include <sstream>

namespace tmspace {

std::uint64_t SpaceId::size() const {
  const std::uint64_t b = base();
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < entries(); ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / b) {
      throw std::overflow_error("space " + to_string() + " has more than 2^64 rules");
    }
    result *= b;
  }
  return result;
}

std::string SpaceId::to_string() const {
  return "(" + std::to_string(states) + "," + std::to_string(colors) + ")";
}

void validate(const SpaceId& space) {
  if (space.states < 1) throw std::invalid_argument("space needs at least one state");
  if (space.colors < 2) throw std::invalid_argument("space needs at least two colors");
  if (space.colors > 255) throw std::invalid_argument("at most 255 colors are supported");
}

SpaceId parse_space(const std::string& text) {
  std::istringstream in(text);
  SpaceId space;
  char comma = 0;
  if (!(in >> space.states >> comma >> space.colors) || comma != ',' || !in.eof()) {
    throw std::invalid_argument("malformed space '" + text + "', expected s,k");
  }
  validate(space);
  return space;
}

std::string CodecConvention::fingerprint() const {
  return std::string("move=") + (move_bit == MoveBit::kOddMovesRight ? "odd-right" : "odd-left") +
         ";digits=state-asc/color-desc;halt-write=applied;input=unary-plus-one";
}

MachineRule::MachineRule(SpaceId space, RuleNumber number, std::vector<Transition> table,
                         CodecConvention convention)
    : space_(space), number_(number), convention_(convention), table_(std::move(table)) {
  validate(space_);
  if (table_.size() != space_.entries()) {
    throw std::invalid_argument("transition table must have s*k entries");
  }
  for (const auto& t : table_) {
    if (t.write >= space_.colors || t.next >= space_.states) {
      throw std::invalid_argument("transition refers to a color or state outside the space");
    }
  }
}

namespace {

std::uint32_t digit_position(const SpaceId& space, State state, Color color) {
  return state * space.colors + (space.colors - 1 - color);
}

bool odd_is_right(const CodecConvention& c) { return c.move_bit == MoveBit::kOddMovesRight; }

}  // namespace

MachineRule decode_rule(RuleNumber number, const SpaceId& space,
                        const CodecConvention& convention) {
  validate(space);
  const std::uint64_t size = space.size();
  if (number >= size) {
    throw std::domain_error("rule " + std::to_string(number) + " outside space " +
                            space.to_string() + " of size " + std::to_string(size));
  }
  const std::uint64_t base = space.base();
  const std::uint32_t n = space.entries();
  std::vector<Transition> table(n);
  RuleNumber rest = number;
  // Least significant digit first, i.e. digit position n-1 down to 0.
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t position = n - 1 - i;
    const auto digit = static_cast<std::uint32_t>(rest % base);
    rest /= base;
    const State state = position / space.colors;
    const Color color = static_cast<Color>(space.colors - 1 - position % space.colors);
    const bool odd = digit % 2 == 1;
    Transition t;
    t.next = digit / (2 * space.colors);
    t.write = static_cast<Color>((digit % (2 * space.colors)) / 2);
    t.move = (odd == odd_is_right(convention)) ? Direction::kRight : Direction::kLeft;
    table[state * space.colors + color] = t;
  }
  return MachineRule(space, number, std::move(table), convention);
}

RuleNumber encode_rule(const MachineRule& rule) {
  const SpaceId& space = rule.space();
  const std::uint64_t base = space.base();
  std::vector<std::uint64_t> digits(space.entries());
  for (State q = 0; q < space.states; ++q) {
    for (Color c = 0; c < space.colors; ++c) {
      const Transition& t = rule.at(q, c);
      const bool right = t.move == Direction::kRight;
      const std::uint64_t bit = (right == odd_is_right(rule.convention())) ? 1 : 0;
      digits[digit_position(space, q, c)] = t.next * 2ull * space.colors + 2ull * t.write + bit;
    }
  }
  RuleNumber number = 0;
  for (std::uint64_t d : digits) number = number * base + d;
  return number;
}

std::string describe(const MachineRule& rule) {
  std::ostringstream out;
  const SpaceId& space = rule.space();
  out << "rule " << rule.number() << " in " << space.to_string() << "\n";
  for (State q = 0; q < space.states; ++q) {
    for (Color c = space.colors; c-- > 0;) {
      const Transition& t = rule.at(q, c);
      out << "  " << q << "," << int(c) << " -> " << int(t.write) << ","
          << (t.move == Direction::kRight ? 'R' : 'L') << "," << t.next << "\n";
    }
  }
  return out.str();
}

}  // namespace tmspace
