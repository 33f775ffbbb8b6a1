#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmspace {

using Color = std::uint8_t;
using State = std::uint32_t;
using RuleNumber = std::uint64_t;

inline constexpr Color kWhite = 0;
inline constexpr Color kBlack = 1;

// An (s,k) rule space: s head states, k tape colors.
struct SpaceId {
  std::uint32_t states = 2;
  std::uint32_t colors = 2;

  // Number of distinct digit values per table entry: 2·s·k.
  std::uint64_t base() const { return 2ull * states * colors; }
  std::uint32_t entries() const { return states * colors; }
  // (2·s·k)^(s·k). Throws std::overflow_error if it does not fit 64 bits.
  std::uint64_t size() const;
  std::string to_string() const;

  friend bool operator==(const SpaceId&, const SpaceId&) = default;
};

// Throws std::invalid_argument unless states >= 1 and colors >= 2.
void validate(const SpaceId& space);
// Parses "s,k" (e.g. "2,2").
SpaceId parse_space(const std::string& text);

enum class Direction : std::uint8_t {
  kLeft,   // away from the bounded edge, toward unbounded tape
  kRight,  // toward the bounded edge at cell 0
};

struct Transition {
  Color write = kWhite;
  Direction move = Direction::kLeft;
  State next = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Which parity of the lowest digit bit means "move right". The enumeration
// never says; kOddMovesRight is the orientation under which rules 2205 and
// 1351 behave as published, and it is the default everywhere.
enum class MoveBit : std::uint8_t { kOddMovesRight, kOddMovesLeft };

struct CodecConvention {
  MoveBit move_bit = MoveBit::kOddMovesRight;

  // Stable string naming every convention that affects results: move bit,
  // digit order, and whether the halting write lands on the tape.
  std::string fingerprint() const;

  friend bool operator==(const CodecConvention&, const CodecConvention&) = default;
};

class MachineRule {
 public:
  MachineRule(SpaceId space, RuleNumber number, std::vector<Transition> table,
              CodecConvention convention = {});

  const SpaceId& space() const { return space_; }
  RuleNumber number() const { return number_; }
  const CodecConvention& convention() const { return convention_; }
  const std::vector<Transition>& table() const { return table_; }

  const Transition& at(State state, Color color) const {
    return table_[state * space_.colors + color];
  }

 private:
  SpaceId space_;
  RuleNumber number_;
  CodecConvention convention_;
  std::vector<Transition> table_;  // index: state * colors + color
};

// Digit position p (0 = most significant) of a rule number maps to the pair
// (state = p / k, color = k - 1 - p % k): states ascending, colors descending.
// A digit d decodes as next = d / 2k, write = (d mod 2k) / 2, move bit = d mod 2.
MachineRule decode_rule(RuleNumber number, const SpaceId& space,
                        const CodecConvention& convention = {});

// Recomputes the rule number from the table alone.
RuleNumber encode_rule(const MachineRule& rule);

// Compact "state,color -> write,move,next" listing used by the CLI.
std::string describe(const MachineRule& rule);

}  // namespace tmspace
