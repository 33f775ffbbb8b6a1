#include "tmspace/io/records.hpp"

#include <json.hpp>
#include <stdexcept>

namespace tmspace::io {

std::string format_record(const ResultRecord& r) {
  std::string line;
  line.reserve(96 + r.result.output.size());
  line += "{\"rule\":";
  line += std::to_string(r.rule);
  line += ",\"input\":";
  line += std::to_string(r.input);
  line += ",\"status\":\"";
  line += to_string(r.result.status);
  line += "\",\"steps\":";
  line += std::to_string(r.result.steps);
  line += ",\"output\":\"";
  line += r.result.output;
  line += "\",\"extent\":";
  line += std::to_string(r.result.max_left_extent);
  line += '}';
  return line;
}

ResultRecord parse_record(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    ResultRecord r;
    r.rule = j.at("rule").get<RuleNumber>();
    r.input = j.at("input").get<std::uint32_t>();
    r.result.status = parse_run_status(j.at("status").get<std::string>());
    r.result.steps = j.at("steps").get<std::uint64_t>();
    r.result.output = j.at("output").get<std::string>();
    r.result.max_left_extent = j.at("extent").get<std::uint64_t>();
    if (!r.result.output.empty()) OutputWord::parse(r.result.output);
    if (!r.result.halted() && !r.result.output.empty()) {
      throw std::invalid_argument("output present on a non-halting record");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed result record: ") + e.what());
  }
}

void write_sweep_record(std::ostream& out, const SweepRecord& record, const ProbeSet& probe) {
  for (std::size_t i = 0; i < probe.inputs.size(); ++i) {
    out << format_record(ResultRecord{record.rule, probe.inputs[i], record.results[i]}) << '\n';
  }
}

}  // namespace tmspace::io
