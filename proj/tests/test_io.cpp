#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tmspace/catalog.hpp"
#include "tmspace/diagram.hpp"
#include "tmspace/histogram.hpp"
#include "tmspace/io/export.hpp"
#include "tmspace/io/manifest.hpp"
#include "tmspace/io/records.hpp"
#include "tmspace/io/render.hpp"
#include "tmspace/io/result_store.hpp"

using namespace tmspace;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("tmspace-test-" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) { return io::read_file(p.string()); }

}  // namespace

TEST_SUITE("io") {

TEST_CASE("record wire form") {
  const io::ResultRecord r{2205, 0, ProbeResult{RunStatus::kHalted, 3, "", 1}};
  CHECK(io::format_record(r) ==
        R"({"rule":2205,"input":0,"status":"halted","steps":3,"output":"","extent":1})");
  CHECK(io::parse_record(io::format_record(r)) == r);
}

TEST_CASE("every status round-trips") {
  for (auto s : {RunStatus::kHalted, RunStatus::kBudgetExhausted, RunStatus::kDivergentLeftEscape,
                 RunStatus::kDivergentCycle, RunStatus::kDivergentEdgeClosure,
                 RunStatus::kDivergentNgramClosure}) {
    const io::ResultRecord r{2985983, 20, ProbeResult{s, 123456789, s == RunStatus::kHalted ? "1011" : "", 77}};
    CHECK(io::parse_record(io::format_record(r)) == r);
    CHECK(parse_run_status(to_string(s)) == s);
  }
}

TEST_CASE("malformed records") {
  CHECK_THROWS_AS(io::parse_record("not json"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_record(R"({"rule":1})"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_record(R"({"rule":1,"input":0,"status":"maybe","steps":3,"output":"","extent":1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::parse_record(R"({"rule":1,"input":0,"status":"halted","steps":3,"output":"01","extent":1})"),
                  std::invalid_argument);
}

TEST_CASE("manifest round-trip and compatibility") {
  const auto m = io::make_manifest({3, 2}, ProbeSet::first(21, 50000, {10, 10}), {});
  const auto back = io::parse_manifest(io::format_manifest(m));
  CHECK(back.space == m.space);
  CHECK(back.probe == m.probe);
  CHECK(back.fingerprint == m.fingerprint);
  CHECK(back.created == m.created);
  CHECK(back.compatible_with(m));
  CHECK(io::format_manifest(back) == io::format_manifest(m));

  auto other = m;
  other.probe.budget = 10;
  CHECK_FALSE(other.compatible_with(m));
  const auto mirrored = io::make_manifest({3, 2}, m.probe, CodecConvention{MoveBit::kOddMovesLeft});
  CHECK_FALSE(mirrored.compatible_with(m));
  CHECK_THROWS_AS(io::require_same_fingerprint(m, mirrored), io::FingerprintMismatchError);
  CHECK_NOTHROW(io::require_same_fingerprint(m, back));
}

TEST_CASE("result store holds the sweep") {
  TempDir dir("store");
  const auto probe = ProbeSet::first(5, 2000);
  auto store = io::ResultStore::create_or_resume(dir.path, io::make_manifest({2, 2}, probe, {}));
  const auto stats = sweep_space({2, 2}, probe, {}, store);
  CHECK(stats.complete());
  CHECK(stats.ranges_committed == 1);
  CHECK(io::ResultStore::open(dir.path).load() == sweep_space({2, 2}, probe));

  // Reopening skips the finished range.
  auto again = io::ResultStore::create_or_resume(dir.path, io::make_manifest({2, 2}, probe, {}));
  const auto resumed = sweep_space({2, 2}, probe, {}, again);
  CHECK(resumed.ranges_skipped == 1);
  CHECK(resumed.ranges_committed == 0);

  CHECK_THROWS_AS(io::ResultStore::create_or_resume(dir.path, io::make_manifest({2, 2}, ProbeSet::first(6, 2000), {})),
                  io::CheckpointError);
}

TEST_CASE("interrupted sweep resumes to the same files") {
  TempDir a("resume-a"), b("resume-b");
  const auto probe = ProbeSet::first(4, 300);
  const auto manifest = io::make_manifest({3, 2}, probe, {});
  SweepOptions opts;
  opts.max_new_ranges = 4;
  auto straight = io::ResultStore::create_or_resume(a.path, manifest);
  sweep_space({3, 2}, probe, opts, straight);

  opts.max_new_ranges = 2;
  {
    auto first = io::ResultStore::create_or_resume(b.path, manifest);
    CHECK(sweep_space({3, 2}, probe, opts, first).ranges_committed == 2);
  }
  opts.parallelism = 3;
  auto second = io::ResultStore::create_or_resume(b.path, manifest);
  const auto stats = sweep_space({3, 2}, probe, opts, second);
  CHECK(stats.ranges_skipped == 2);
  CHECK(stats.ranges_committed == 2);
  for (std::uint64_t i = 0; i < 4; ++i) CHECK(slurp(straight.range_path(i)) == slurp(second.range_path(i)));
  CHECK_THROWS_AS(io::ResultStore::open(b.path).load(), IncompleteResultsError);
}

TEST_CASE("corrupt checkpoints are reported") {
  TempDir dir("corrupt");
  const auto probe = ProbeSet::first(3, 100);
  auto store = io::ResultStore::create_or_resume(dir.path, io::make_manifest({2, 2}, probe, {}));
  sweep_space({2, 2}, probe, {}, store);
  const auto path = store.range_path(0);
  const auto text = slurp(path);

  io::write_file(path.string(), text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(store.has_range(0), io::CheckpointError);
  CHECK_THROWS_AS(sweep_space({2, 2}, probe, {}, store), io::CheckpointError);

  auto swapped = lines(text);
  std::swap(swapped[0], swapped[1]);
  std::string joined;
  for (const auto& l : swapped) joined += l + "\n";
  io::write_file(path.string(), joined);
  CHECK_THROWS_AS(store.has_range(0), io::CheckpointError);

  io::write_file(path.string(), text);
  CHECK(store.has_range(0));
}

TEST_CASE("histogram export") {
  const std::vector<RuleNumber> one{512};
  const auto h = halting_histogram(sweep_rules({2, 2}, one, ProbeSet::first(21, 100)));
  const auto csv = io::export_histogram(h, io::TableFormat::kCsv);
  const auto rows = lines(csv);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1] == "bin_start,bin_end,count");
  CHECK(rows[2] == "1,2,21");
  CHECK(rows[3] == "total,,21");

  const auto full = halting_histogram(sweep_space({2, 2}, ProbeSet::first(21, 20000, {10, 4})));
  for (auto f : {io::TableFormat::kCsv, io::TableFormat::kJsonl}) {
    const auto text = io::export_histogram(full, f);
    const auto back = io::import_histogram(text);
    CHECK(back == full);
    CHECK(io::export_histogram(back, f) == text);
  }
  CHECK_THROWS(io::import_histogram("# states=2\nbin_start,bin_end,count\n1,2,3\ntotal,,4\n"));
}

TEST_CASE("catalog export round-trips") {
  const auto c = classify_functions(sweep_space({2, 2}, ProbeSet::first(8, 3000, {10})));
  const auto text = io::export_catalog(c);
  const auto back = io::import_catalog(text);
  CHECK(back == c);
  CHECK(io::export_catalog(back) == text);
  CHECK(lines(text).size() == c.groups.size() + 1);
}

TEST_CASE("ascii rendering") {
  SpaceTimeDiagram d;
  d.rows = {{kBlack}, {kWhite}};
  d.head_track = {0, -1};
  d.width = 1;
  CHECK(io::render_diagram(d, io::DiagramFormat::kAscii) == "@\n.\n");

  const auto r = record_diagram(decode_rule(2205, {2, 2}), 1, 100);
  const auto text = lines(io::render_diagram(r, io::DiagramFormat::kAscii));
  REQUIRE(text.size() == r.height());
  CHECK(text.front() == ".#@");
  CHECK(text.back() == "..#");
}

TEST_CASE("bitmap rendering") {
  for (RuleNumber n : {1351ull, 2205ull}) {
    const auto d = record_diagram(decode_rule(n, {2, 2}), 5, 10000);
    for (bool pad : {false, true}) {
      const auto text = io::render_diagram(d, io::DiagramFormat::kPortableBitmap, pad);
      std::istringstream in(text);
      std::string magic;
      std::uint64_t columns = 0, height = 0;
      in >> magic >> columns >> height;
      CHECK(magic == "P1");
      CHECK(height == d.height());
      CHECK(columns == (pad ? std::max(d.height(), d.width) : d.width));
      std::vector<std::string> rows;
      std::string line;
      std::getline(in, line);
      std::uint64_t ones = 0;
      while (std::getline(in, line)) {
        std::string bits;
        for (char ch : line) {
          if (ch == '0' || ch == '1') bits += ch;
          else REQUIRE(ch == ' ');
        }
        REQUIRE(bits.size() == columns);
        ones += std::count(bits.begin(), bits.end(), '1');
        rows.push_back(bits);
      }
      REQUIRE(rows.size() == height);
      CHECK(ones == d.black_cells());
      if (n == 1351) CHECK(rows.front() == rows.back());
    }
  }
}

TEST_CASE("svg rendering") {
  const auto d = record_diagram(decode_rule(1351, {2, 2}), 3, 1000);
  const auto svg = io::render_diagram(d, io::DiagramFormat::kSvg);
  std::uint64_t occupied = 0;
  for (std::uint64_t r = 0; r < d.height(); ++r) {
    for (std::uint64_t i = 0; i < d.width; ++i) occupied += d.occupied(r, i);
  }
  std::uint64_t rects = 0;
  for (std::size_t at = svg.find("<rect"); at != std::string::npos; at = svg.find("<rect", at + 1)) ++rects;
  // One background rect plus one per occupied cell.
  CHECK(rects == occupied + 1);
  CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("format names") {
  CHECK(io::parse_diagram_format("pbm") == io::DiagramFormat::kPortableBitmap);
  CHECK(io::parse_table_format("jsonl") == io::TableFormat::kJsonl);
  CHECK_THROWS(io::parse_diagram_format("png"));
  CHECK_THROWS(io::parse_table_format("xml"));
}

}  // TEST_SUITE
