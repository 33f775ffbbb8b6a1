#include <doctest.h>

#include <algorithm>
#include <set>

#include "tmspace/diagram.hpp"
#include "tmspace/dimension.hpp"

using namespace tmspace;

namespace {

SpaceTimeDiagram square(std::uint64_t t, bool fill_all) {
  SpaceTimeDiagram d;
  d.width = t;
  for (std::uint64_t r = 0; r < t; ++r) {
    d.rows.push_back(std::vector<Color>(t, fill_all || r == 0 ? kBlack : kWhite));
    d.head_track.push_back(-1);
  }
  return d;
}

std::uint64_t extent(const SpaceTimeDiagram& d) { return std::max(d.height(), d.width); }

// Straightforward recount: visit every cell of the bounding square and
// collect the boxes holding an occupied one.
std::uint64_t recount(const SpaceTimeDiagram& d, std::uint64_t side) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> boxes;
  for (std::uint64_t r = 0; r < d.height(); ++r) {
    for (std::uint64_t i = 0; i < extent(d); ++i) {
      if (d.occupied(r, i)) boxes.insert({r / side, i / side});
    }
  }
  return boxes.size();
}

}  // namespace

TEST_SUITE("dimension") {

TEST_CASE("dyadic sides") {
  CHECK(dyadic_sides(1) == std::vector<std::uint64_t>{1});
  CHECK(dyadic_sides(9) == std::vector<std::uint64_t>{1, 2, 4, 8});
  CHECK(dyadic_sides(16) == std::vector<std::uint64_t>{1, 2, 4, 8, 16});
}

TEST_CASE("plane-filling square") {
  const auto d = square(256, true);
  const auto counts = box_count(d);
  for (const auto& c : counts) CHECK(c.boxes == (256 / c.side) * (256 / c.side));
  CHECK(box_dimension(counts) == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("single row") {
  const auto d = square(256, false);
  const auto counts = box_count(d);
  for (const auto& c : counts) CHECK(c.boxes == 256 / c.side);
  CHECK(box_dimension(counts) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("rule 1351 on input 8 matches a brute-force recount") {
  const auto d = record_diagram(decode_rule(1351, {2, 2}), 8, 100000);
  REQUIRE(d.height() == 2046);
  const auto counts = box_count(d);
  REQUIRE(counts.size() == 11);
  for (const auto& c : counts) {
    INFO("side " << c.side);
    CHECK(c.boxes == recount(d, c.side));
  }
  const auto streamed = box_count_run(decode_rule(1351, {2, 2}), 8, 100000);
  CHECK(streamed.height == d.height());
  CHECK(streamed.counts == counts);
}

TEST_CASE("box counts over many machines") {
  for (RuleNumber n = 0; n < 4096; n += 13) {
    const auto rule = decode_rule(n, {2, 2});
    const auto o = run(rule, 6, 20000);
    if (o.status != RunStatus::kHalted) continue;
    const auto d = record_diagram(rule, 6, 20000);
    const auto counts = box_count(d);
    std::uint64_t occupied = 0;
    for (std::uint64_t r = 0; r < d.height(); ++r) {
      for (std::uint64_t i = 0; i < extent(d); ++i) occupied += d.occupied(r, i);
    }
    REQUIRE(counts.front().boxes == occupied);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      REQUIRE(counts[i].boxes == recount(d, counts[i].side));
      if (i) REQUIRE(counts[i].boxes <= counts[i - 1].boxes);
    }
    if (counts.size() >= 2) {
      const double slope = box_dimension(counts);
      CHECK(slope >= 0);
      CHECK(slope <= 2.05);
    }
  }
}

TEST_CASE("rule 2205 trends up, rule 1351 trends down") {
  const auto linear = fractal_dimension(decode_rule(2205, {2, 2}), ProbeSet::first(21, 1'000'000));
  CHECK_FALSE(linear.degenerate);
  CHECK(linear.trend == Trend::kIncreasing);
  CHECK(linear.extrapolated >= 1.6);
  const auto exponential = fractal_dimension(decode_rule(1351, {2, 2}), ProbeSet::first(13, 1'000'000));
  CHECK_FALSE(exponential.degenerate);
  CHECK(exponential.trend == Trend::kDecreasing);
  CHECK(exponential.extrapolated <= 1.4);
  for (const auto* e : {&linear, &exponential}) {
    for (const auto& p : e->per_input) {
      CHECK(p.slope >= 0);
      CHECK(p.slope <= 2.05);
    }
  }
}

TEST_CASE("a one-step halter is degenerate") {
  const auto e = fractal_dimension(decode_rule(512, {2, 2}), ProbeSet::first(21, 100));
  CHECK(e.degenerate);
  CHECK(e.per_input.empty());
}

TEST_CASE("non-halting probes are named") {
  try {
    fractal_dimension(decode_rule(0, {2, 2}), ProbeSet::first(3, 100));
    FAIL("no exception");
  } catch (const NonHaltingProbeError& e) {
    CHECK(e.input() == 0);
  }
}

}  // TEST_SUITE
