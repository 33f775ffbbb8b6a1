#include "tmspace/io/result_store.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tmspace/io/records.hpp"

namespace fs = std::filesystem;

namespace tmspace::io {

namespace {

Manifest read_manifest(const fs::path& dir) {
  std::ifstream in(dir / "manifest.jsonl");
  std::string line;
  if (!in || !std::getline(in, line)) throw CheckpointError("no manifest in " + dir.string());
  try {
    return parse_manifest(line);
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(dir.string() + ": " + e.what());
  }
}

}  // namespace

ResultStore ResultStore::create_or_resume(const fs::path& dir, const Manifest& manifest) {
  if (fs::exists(dir / "manifest.jsonl")) {
    Manifest existing = read_manifest(dir);
    if (!existing.compatible_with(manifest)) {
      throw CheckpointError("cannot resume " + dir.string() +
                            ": its manifest has a different space, probe set or fingerprint");
    }
    return ResultStore(dir, std::move(existing));
  }
  fs::create_directories(dir / "ranges");
  {
    std::ofstream out(dir / "manifest.jsonl.tmp");
    out << format_manifest(manifest) << '\n';
    if (!out) throw CheckpointError("cannot write manifest in " + dir.string());
  }
  fs::rename(dir / "manifest.jsonl.tmp", dir / "manifest.jsonl");
  return ResultStore(dir, manifest);
}

ResultStore ResultStore::open(const fs::path& dir) { return ResultStore(dir, read_manifest(dir)); }

fs::path ResultStore::range_path(std::uint64_t range_index) const {
  char name[32];
  std::snprintf(name, sizeof name, "range-%06llu.jsonl", static_cast<unsigned long long>(range_index));
  return dir_ / "ranges" / name;
}

std::vector<SweepRecord> ResultStore::read_range(std::uint64_t range_index) const {
  const auto path = range_path(range_index);
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot read " + path.string());
  const auto [first, last] = range_bounds(manifest_.space, range_index);
  const auto& inputs = manifest_.probe.inputs;
  std::vector<SweepRecord> records;
  records.reserve(last - first);
  std::string line;
  std::uint64_t line_no = 0;
  for (RuleNumber rule = first; rule < last; ++rule) {
    SweepRecord record;
    record.rule = rule;
    record.results.reserve(inputs.size());
    for (auto n : inputs) {
      ++line_no;
      if (!std::getline(in, line)) {
        throw CheckpointError(path.string() + ": truncated at line " + std::to_string(line_no));
      }
      ResultRecord r;
      try {
        r = parse_record(line);
      } catch (const std::invalid_argument& e) {
        throw CheckpointError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (r.rule != rule || r.input != n) {
        throw CheckpointError(path.string() + ":" + std::to_string(line_no) + ": expected rule " +
                              std::to_string(rule) + " input " + std::to_string(n));
      }
      record.results.push_back(std::move(r.result));
    }
    records.push_back(std::move(record));
  }
  if (std::getline(in, line)) throw CheckpointError(path.string() + ": trailing data");
  return records;
}

bool ResultStore::has_range(std::uint64_t range_index) {
  if (!fs::exists(range_path(range_index))) return false;
  read_range(range_index);
  return true;
}

void ResultStore::commit(std::uint64_t range_index, std::span<const SweepRecord> records) {
  const auto path = range_path(range_index);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    for (const auto& record : records) write_sweep_record(out, record, manifest_.probe);
    out.flush();
    if (!out) throw CheckpointError("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

void ResultStore::for_each(const std::function<void(const SweepRecord&)>& visit) const {
  const std::uint64_t ranges = range_count(manifest_.space);
  std::vector<std::pair<RuleNumber, RuleNumber>> missing;
  for (std::uint64_t i = 0; i < ranges; ++i) {
    if (!fs::exists(range_path(i))) missing.push_back(range_bounds(manifest_.space, i));
  }
  if (!missing.empty()) {
    std::ostringstream what;
    what << dir_.string() << " is missing " << missing.size() << " of " << ranges << " rule ranges";
    throw IncompleteResultsError(what.str(), std::move(missing));
  }
  for (std::uint64_t i = 0; i < ranges; ++i) {
    for (const auto& record : read_range(i)) visit(record);
  }
}

SweepResultSet ResultStore::load() const {
  SweepResultSet set{manifest_.space, manifest_.probe, manifest_.convention, {}};
  set.records.reserve(manifest_.space.size());
  for_each([&](const SweepRecord& r) { set.records.push_back(r); });
  return set;
}

}  // namespace tmspace::io
