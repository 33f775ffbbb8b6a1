#pragma once

#include <string>

#include "tmspace/explorer.hpp"

namespace tmspace::io {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kManifestFormat = "tmspace-manifest/1";

struct Manifest {
  SpaceId space;
  ProbeSet probe;
  CodecConvention convention;
  std::string fingerprint;  // convention.fingerprint() at creation
  std::string tool_version = kToolVersion;
  std::string created;  // UTC, ISO 8601

  // Same space, probe and fingerprint. Version and timestamp may differ.
  bool compatible_with(const Manifest& other) const;
};

Manifest make_manifest(const SpaceId& space, const ProbeSet& probe, const CodecConvention& convention);

std::string format_manifest(const Manifest& manifest);  // one line, no newline
Manifest parse_manifest(const std::string& line);

class FingerprintMismatchError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws FingerprintMismatchError unless both carry the same fingerprint.
void require_same_fingerprint(const Manifest& a, const Manifest& b);

}  // namespace tmspace::io
