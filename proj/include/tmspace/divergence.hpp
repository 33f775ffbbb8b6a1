#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tmspace/configuration.hpp"
#include "tmspace/machine.hpp"

namespace tmspace {

// The head sits on a cell with only white cells to its left, and following
// the white-reading transitions from `states.front()` stays inside `states`
// while always moving left. The head therefore never comes back.
struct LeftEscapeCertificate {
  std::uint64_t step = 0;
  std::uint64_t head = 0;
  std::vector<State> states;

  friend bool operator==(const LeftEscapeCertificate&, const LeftEscapeCertificate&) = default;
};

// Configurations at first_step and second_step coincide.
//
// shift == 0: exact recurrence of tape, head and state.
// shift > 0: both steps had the head on a never-visited cell in the same
// state; in between the head never went right of `window_start`; the cells
// [window_start, head1] at first_step equal [window_start + shift, head2] at
// second_step. The segment then replays forever, translated by `shift`.
struct CycleCertificate {
  std::uint64_t first_step = 0;
  std::uint64_t second_step = 0;
  std::uint64_t shift = 0;
  std::uint64_t window_start = 0;

  std::uint64_t period() const { return second_step - first_step; }
  friend bool operator==(const CycleCertificate&, const CycleCertificate&) = default;
};

// Abstracts a configuration to the exact contents of cells [0, segment), the
// head position (or "outside", left of the segment) and the state. While the
// head is outside the segment is frozen, and it can only re-enter at cell
// segment-1 in a state some right-moving transition leads to. The closure of
// that finite abstract graph from the observed configuration at `step`
// contains no halting transition at cell 0.
struct EdgeClosureCertificate {
  std::uint64_t step = 0;
  std::uint32_t segment = 0;
  std::uint64_t closure_size = 0;

  friend bool operator==(const EdgeClosureCertificate&, const EdgeClosureCertificate&) = default;
};

// Abstracts a configuration to the state, the head cell and the `radius`
// cells on each side of the head. The tape beyond each window is summarised
// by the set of `radius`-cell segments that can border it; the edge counts as
// a symbol on the right. Every cell also carries its index modulo `modulus`,
// which keeps parity-style alignment that plain segments lose. Cells below
// `floor` are read as edge too, so the head provably stays left of them. Closing the local configurations and both segment
// sets under the rule from the configuration at `step` never reaches a right
// move at cell 0.
struct NgramClosureCertificate {
  std::uint64_t step = 0;
  std::uint32_t radius = 0;
  std::uint32_t modulus = 1;
  std::uint64_t floor = 0;
  std::uint64_t closure_size = 0;

  friend bool operator==(const NgramClosureCertificate&, const NgramClosureCertificate&) = default;
};

using DivergenceCertificate = std::variant<LeftEscapeCertificate, CycleCertificate,
                                           EdgeClosureCertificate, NgramClosureCertificate>;

// Follows (state, white) transitions from the current state. Requires every
// cell at or left of the head to be white; returns nothing otherwise.
std::optional<LeftEscapeCertificate> detect_left_escape(const Configuration& config,
                                                        const MachineRule& rule);

// Tries segment lengths 1..max_segment. `max_nodes` caps each closure.
std::optional<EdgeClosureCertificate> detect_edge_closure(const Configuration& config,
                                                          const MachineRule& rule,
                                                          std::uint32_t max_segment = 8,
                                                          std::size_t max_nodes = 1u << 14);

// Tries radii 1..max_radius, each with moduli 1..max_modulus, first with the
// real edge and then with the nearest non-white cells as floors. `max_nodes`
// caps each closure.
std::optional<NgramClosureCertificate> detect_ngram_closure(const Configuration& config,
                                                            const MachineRule& rule,
                                                            std::uint32_t max_radius = 6,
                                                            std::uint32_t max_modulus = 4,
                                                            std::size_t max_nodes = 1u << 16);

// Exact configuration value, with the tape trimmed to the furthest of the
// head and the leftmost non-white cell.
struct ConfigurationDigest {
  std::vector<Color> cells;
  std::uint64_t head = 0;
  State state = 0;
  std::uint64_t step = 0;

  bool same_configuration(const ConfigurationDigest& other) const {
    return head == other.head && state == other.state && cells == other.cells;
  }
};

ConfigurationDigest digest(const Configuration& config);

// First exact recurrence in a configuration history.
std::optional<CycleCertificate> detect_cycle(std::span<const ConfigurationDigest> history);

// Replays `rule` from `start` with the plain step function and checks the
// certificate's claim.
bool verify_certificate(const MachineRule& rule, const Configuration& start,
                        const DivergenceCertificate& certificate);

}  // namespace tmspace
