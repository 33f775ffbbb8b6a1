#include "tmspace/io/manifest.hpp"

#include <chrono>
#include <ctime>
#include <json.hpp>

namespace tmspace::io {

bool Manifest::compatible_with(const Manifest& other) const {
  return space == other.space && probe == other.probe && fingerprint == other.fingerprint;
}

Manifest make_manifest(const SpaceId& space, const ProbeSet& probe, const CodecConvention& convention) {
  Manifest m;
  m.space = space;
  m.probe = probe;
  m.convention = convention;
  m.fingerprint = convention.fingerprint();
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  m.created = buf;
  return m;
}

std::string format_manifest(const Manifest& m) {
  nlohmann::ordered_json j;
  j["format"] = kManifestFormat;
  j["states"] = m.space.states;
  j["colors"] = m.space.colors;
  j["inputs"] = m.probe.inputs;
  j["budget"] = m.probe.budget;
  j["budget_schedule"] = m.probe.budget_schedule;
  j["move_bit"] = m.convention.move_bit == MoveBit::kOddMovesRight ? "odd-right" : "odd-left";
  j["fingerprint"] = m.fingerprint;
  j["range_size"] = kRangeSize;
  j["tool_version"] = m.tool_version;
  j["created"] = m.created;
  return j.dump();
}

Manifest parse_manifest(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    if (j.at("format").get<std::string>() != kManifestFormat) {
      throw std::invalid_argument("unsupported manifest format");
    }
    if (j.at("range_size").get<std::uint64_t>() != kRangeSize) {
      throw std::invalid_argument("manifest range size differs from this build");
    }
    Manifest m;
    m.space.states = j.at("states").get<std::uint32_t>();
    m.space.colors = j.at("colors").get<std::uint32_t>();
    validate(m.space);
    m.probe.inputs = j.at("inputs").get<std::vector<std::uint32_t>>();
    m.probe.budget = j.at("budget").get<std::uint64_t>();
    m.probe.budget_schedule = j.at("budget_schedule").get<std::vector<std::uint64_t>>();
    m.probe.validate();
    const auto move = j.at("move_bit").get<std::string>();
    if (move == "odd-right") {
      m.convention.move_bit = MoveBit::kOddMovesRight;
    } else if (move == "odd-left") {
      m.convention.move_bit = MoveBit::kOddMovesLeft;
    } else {
      throw std::invalid_argument("unknown move_bit '" + move + "'");
    }
    m.fingerprint = j.at("fingerprint").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.created = j.at("created").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed manifest: ") + e.what());
  }
}

void require_same_fingerprint(const Manifest& a, const Manifest& b) {
  if (a.fingerprint != b.fingerprint) {
    throw FingerprintMismatchError("calibration fingerprints differ: '" + a.fingerprint + "' vs '" +
                                   b.fingerprint + "'");
  }
}

}  // namespace tmspace::io
