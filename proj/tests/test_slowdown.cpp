#include <doctest.h>

#include "tmspace/correspondence.hpp"
#include "tmspace/slowdown.hpp"

using namespace tmspace;

namespace {

FunctionCatalog partial_catalog(const SpaceId& space, const std::vector<RuleNumber>& rules, const ProbeSet& probe) {
  const auto results = sweep_rules(space, rules, probe);
  CatalogBuilder b(space, probe, results.convention);
  for (const auto& r : results.records) b.add(r);
  return b.finish(false);
}

const FunctionCatalog& catalog22() {
  static const auto c = classify_functions(sweep_space({2, 2}, ProbeSet::first(9, 10000)));
  return c;
}

const FunctionCatalog& catalog32_sample() {
  static const auto c = [] {
    std::vector<RuleNumber> rules;
    for (RuleNumber n = 0; n < SpaceId{3, 2}.size(); n += 97) rules.push_back(n);
    return partial_catalog({3, 2}, rules, ProbeSet::first(9, 10000));
  }();
  return c;
}

}  // namespace

TEST_SUITE("slowdown") {

TEST_CASE("aggregates") {
  const std::vector<std::uint32_t> inputs{0, 1, 2, 3};
  const std::vector<std::uint64_t> steps{1, 2, 4, 8};
  CHECK(aggregate_steps(Aggregate::kMean, inputs, steps) == doctest::Approx(3.75));
  CHECK(aggregate_steps(Aggregate::kWorstCase, inputs, steps) == doctest::Approx(8));
  CHECK(aggregate_steps(Aggregate::kHarmonicMean, inputs, steps) == doctest::Approx(4 / (1 + 0.5 + 0.25 + 0.125)));
  // upper half: (2,4), (3,8)
  CHECK(aggregate_steps(Aggregate::kAsymptotic, inputs, steps) == doctest::Approx(4));
}

TEST_CASE("a catalog against itself ties everywhere") {
  const auto r = slowdown_report(catalog22(), catalog22());
  CHECK(r.entries.size() == catalog22().groups.size());
  for (std::size_t a = 0; a < 4; ++a) {
    CHECK(r.ties[a] == r.entries.size());
    CHECK(r.slow_down[a] == 0);
    CHECK(r.speed_up[a] == 0);
  }
}

TEST_CASE("swapping the catalogs flips every verdict") {
  const auto forward = slowdown_report(catalog22(), catalog32_sample());
  const auto backward = slowdown_report(catalog32_sample(), catalog22());
  REQUIRE(!forward.entries.empty());
  REQUIRE(forward.entries.size() == backward.entries.size());
  for (std::size_t a = 0; a < 4; ++a) {
    CHECK(forward.slow_down[a] == backward.speed_up[a]);
    CHECK(forward.speed_up[a] == backward.slow_down[a]);
    CHECK(forward.ties[a] == backward.ties[a]);
  }
  for (std::size_t i = 0; i < forward.entries.size(); ++i) {
    const auto& f = forward.entries[i];
    const auto& b = backward.entries[i];
    REQUIRE(f.signature == b.signature);
    for (std::size_t a = 0; a < 4; ++a) {
      if (f.verdict[a] == Verdict::kTie) CHECK(b.verdict[a] == Verdict::kTie);
      if (f.verdict[a] == Verdict::kSlowDown) CHECK(b.verdict[a] == Verdict::kSpeedUp);
      if (f.verdict[a] == Verdict::kSpeedUp) CHECK(b.verdict[a] == Verdict::kSlowDown);
    }
  }
}

TEST_CASE("shared signatures only") {
  const auto r = slowdown_report(catalog22(), catalog32_sample());
  for (const auto& e : r.entries) {
    CHECK(catalog22().groups.count(e.signature));
    CHECK(catalog32_sample().groups.count(e.signature));
  }
}

TEST_CASE("mismatched probes are refused") {
  const auto other = partial_catalog({2, 2}, {2205}, ProbeSet::first(8, 10000));
  CHECK_THROWS_AS(slowdown_report(catalog22(), other), ProbeMismatchError);
}

TEST_CASE("correspondence on the two calibration machines") {
  const auto c = partial_catalog({2, 2}, {1351, 2205}, ProbeSet::first(13, 1'000'000));
  const auto r = correspondence_report(c, 1'000'000);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].rule == 1351);
  CHECK(r.entries[0].runtime.kind == RuntimeKind::kExponential);
  CHECK(r.entries[1].runtime.kind == RuntimeKind::kLinear);
  CHECK(r.linear_total == 1);
  CHECK(r.exponential_total == 1);
  CHECK(r.exponential_agree == 1);
}

TEST_CASE("empty correspondence report") {
  const auto c = partial_catalog({2, 2}, {}, ProbeSet::first(13, 100));
  const auto r = correspondence_report(c, 100);
  CHECK(r.entries.empty());
  CHECK(r.linear_total == 0);
  CHECK(r.exponential_total == 0);
}

TEST_CASE("correspondence is deterministic") {
  const auto c = partial_catalog({2, 2}, {1351, 2205, 1000, 3000}, ProbeSet::first(10, 100000));
  const auto a = correspondence_report(c, 100000, {}, 1);
  const auto b = correspondence_report(c, 100000, {}, 3);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].rule == b.entries[i].rule);
    CHECK(a.entries[i].dimension.extrapolated == b.entries[i].dimension.extrapolated);
    CHECK(a.entries[i].runtime.label() == b.entries[i].runtime.label());
  }
}

}  // TEST_SUITE
