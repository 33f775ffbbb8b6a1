#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "tmspace/explorer.hpp"

namespace tmspace::io {

// Wire form of one (rule, input) run: a single JSON object per line with
// keys rule, input, status, steps, output, extent in that order.
struct ResultRecord {
  RuleNumber rule = 0;
  std::uint32_t input = 0;
  ProbeResult result;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

std::string format_record(const ResultRecord& record);
// Throws std::invalid_argument on malformed lines.
ResultRecord parse_record(std::string_view line);

// One line per probe input, in probe order.
void write_sweep_record(std::ostream& out, const SweepRecord& record, const ProbeSet& probe);

}  // namespace tmspace::io
