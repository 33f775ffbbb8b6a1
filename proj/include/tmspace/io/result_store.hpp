#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>

#include "tmspace/catalog.hpp"
#include "tmspace/explorer.hpp"
#include "tmspace/io/manifest.hpp"

namespace tmspace::io {

class CheckpointError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A sweep directory:
//   manifest.jsonl           one manifest object
//   ranges/range-NNNNNN.jsonl  result records of rule range NNNNNN
//   catalog.jsonl            classification, once computed
// Range files appear atomically (written aside, then renamed), so a file
// that exists is either complete or corrupt, never half-written by us.
class ResultStore : public RangeSink {
 public:
  // Creates the directory with `manifest`, or reopens an existing one whose
  // manifest must be compatible (else CheckpointError).
  static ResultStore create_or_resume(const std::filesystem::path& dir, const Manifest& manifest);
  // Existing directory, read-only use.
  static ResultStore open(const std::filesystem::path& dir);

  const Manifest& manifest() const { return manifest_; }
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path range_path(std::uint64_t range_index) const;

  // True when the range file exists and validates; throws CheckpointError
  // when it exists but is corrupt.
  bool has_range(std::uint64_t range_index) override;
  void commit(std::uint64_t range_index, std::span<const SweepRecord> records) override;

  // Streams every record in rule order. Throws IncompleteResultsError when
  // ranges are missing.
  void for_each(const std::function<void(const SweepRecord&)>& visit) const;
  SweepResultSet load() const;

  std::filesystem::path catalog_path() const { return dir_ / "catalog.jsonl"; }

 private:
  ResultStore(std::filesystem::path dir, Manifest manifest) : dir_(std::move(dir)), manifest_(std::move(manifest)) {}
  std::vector<SweepRecord> read_range(std::uint64_t range_index) const;

  std::filesystem::path dir_;
  Manifest manifest_;
};

}  // namespace tmspace::io
