#include <doctest.h>

#include <cstdlib>
#include <variant>

#include "tmspace/configuration.hpp"
#include "tmspace/diagram.hpp"
#include "tmspace/machine.hpp"
#include "tmspace/run.hpp"

using namespace tmspace;

namespace {

std::string word(const RunOutcome& o) { return o.output ? o.output->to_string() : "<none>"; }

}  // namespace

TEST_SUITE("run") {

TEST_CASE("input tapes") {
  for (std::uint32_t n : {0u, 1u, 5u}) {
    const auto c = input_tape(n);
    CHECK(c.tape == std::vector<Color>(n + 1, kBlack));
    CHECK(c.head == 0);
    CHECK(c.state == 0);
    CHECK(c.steps == 0);
  }
}

TEST_CASE("step off the edge halts with the write applied") {
  // (0, black) -> write 0, right, state 0
  const auto rule = decode_rule(1 * 512, {2, 2});
  const auto r = step(input_tape(0), rule);
  REQUIRE(std::holds_alternative<HaltEvent>(r));
  const auto& h = std::get<HaltEvent>(r);
  CHECK(h.steps == 1);
  CHECK(h.tape == std::vector<Color>{kWhite});
}

TEST_CASE("step to the left") {
  // (0, black) -> write 1, left, state 1
  const auto rule = decode_rule(6 * 512, {2, 2});
  const auto r = step(input_tape(0), rule);
  REQUIRE(std::holds_alternative<Configuration>(r));
  const auto& c = std::get<Configuration>(r);
  CHECK(c.head == 1);
  CHECK(c.state == 1);
  CHECK(c.steps == 1);
  CHECK(c.tape == std::vector<Color>{kBlack, kWhite});
}

TEST_CASE("rule 0 on input 0 is pinned") {
  const auto a = run(decode_rule(0, {2, 2}), 0, 1000);
  const auto b = run(decode_rule(0, {2, 2}), 0, 1);
  CHECK(a.status == RunStatus::kDivergentLeftEscape);
  CHECK(a.steps == 1);
  CHECK(b.status == RunStatus::kDivergentLeftEscape);
  CHECK(b.steps == 1);
}

TEST_CASE("rule 2205 outputs one black cell for positive inputs") {
  const auto rule = decode_rule(2205, {2, 2});
  for (std::uint32_t n = 1; n <= 20; ++n) {
    const auto o = run(rule, n, 1'000'000);
    REQUIRE(o.status == RunStatus::kHalted);
    CHECK(word(o) == "1");
    CHECK(o.steps == 10 * n - 3);
  }
  // Input 0 erases its only cell.
  const auto zero = run(rule, 0, 1000);
  CHECK(zero.status == RunStatus::kHalted);
  CHECK(zero.steps == 3);
  CHECK(word(zero) == "");
}

TEST_CASE("rule 1351 computes the identity in exponential time") {
  const auto rule = decode_rule(1351, {2, 2});
  for (std::uint32_t n = 0; n <= 12; ++n) {
    const auto o = run(rule, n, 1'000'000);
    REQUIRE(o.status == RunStatus::kHalted);
    CHECK(word(o) == std::string(n + 1, '1'));
    CHECK(o.steps == (std::uint64_t{1} << (n + 3)) - 3);
  }
  CHECK(word(run(rule, 3, 1000)) == "1111");
}

TEST_CASE("runs are deterministic") {
  for (RuleNumber n : {2205ull, 1351ull, 3171ull, 77ull}) {
    const auto rule = decode_rule(n, {2, 2});
    for (std::uint32_t i = 0; i < 6; ++i) {
      const auto a = run(rule, i, 100000), b = run(rule, i, 100000);
      CHECK(a.status == b.status);
      CHECK(a.steps == b.steps);
      CHECK(a.output == b.output);
      CHECK(a.certificate == b.certificate);
    }
  }
}

TEST_CASE("halting agrees with step-by-step replay across (2,2)") {
  for (RuleNumber n = 0; n < 4096; ++n) {
    const auto rule = decode_rule(n, {2, 2});
    for (std::uint32_t input = 0; input < 4; ++input) {
      const auto o = run(rule, input, 5000);
      auto config = input_tape(input);
      std::optional<HaltEvent> halt;
      while (!halt && config.steps < 5000) halt = apply_step(config, rule);
      REQUIRE((o.status == RunStatus::kHalted) == halt.has_value());
      if (halt) {
        REQUIRE(o.steps == halt->steps);
        REQUIRE(*o.output == canonical_output(halt->tape));
      }
    }
  }
}

TEST_CASE("budget monotonicity") {
  for (RuleNumber n = 0; n < 4096; n += 7) {
    const auto rule = decode_rule(n, {2, 2});
    const auto o = run(rule, 3, 100000);
    if (o.status != RunStatus::kHalted) continue;
    for (std::uint64_t b : {o.steps, o.steps + 1, 2 * o.steps, std::uint64_t{1'000'000}}) {
      const auto p = run(rule, 3, b);
      REQUIRE(p.status == RunStatus::kHalted);
      REQUIRE(p.steps == o.steps);
      REQUIRE(p.output == o.output);
    }
    if (o.steps > 1) CHECK(run(rule, 3, o.steps - 1).status != RunStatus::kHalted);
  }
}

TEST_CASE("budget exhaustion stops at exactly the budget") {
  const auto rule = decode_rule(1351, {2, 2});
  RunOptions opts;
  opts.budget = 100;
  const auto o = run(rule, input_tape(10), opts);
  CHECK(o.status == RunStatus::kBudgetExhausted);
  CHECK(o.steps == 100);
  CHECK_THROWS(run(rule, input_tape(1), RunOptions{0}));
}

TEST_CASE("canonical output") {
  // index 0 is the right edge, so this is ...0001011
  const std::vector<Color> tape{1, 1, 0, 1, 0, 0, 0};
  CHECK(canonical_output(tape).to_string() == "1011");
  CHECK(canonical_output(std::vector<Color>{0, 0, 0}).to_string().empty());
  CHECK(OutputWord::parse("1011") == canonical_output(tape));
  CHECK(OutputWord::parse("").empty());
  CHECK_THROWS(OutputWord::parse("0110"));
  CHECK(OutputWord::parse("10201").black_count() == 3);
}

TEST_CASE("diagram invariants") {
  for (RuleNumber n : {2205ull, 1351ull}) {
    const auto rule = decode_rule(n, {2, 2});
    for (std::uint32_t input : {0u, 3u, 5u, 8u}) {
      const auto o = run(rule, input, 1'000'000);
      const auto d = record_diagram(rule, input, 1'000'000);
      REQUIRE(d.height() == o.steps + 1);
      CHECK(d.width <= d.height() + input + 1);
      CHECK(d.rows.front() == input_tape(input).tape);
      CHECK(canonical_output(d.rows.back()) == *o.output);
      CHECK(d.head_track.front() == 0);
      CHECK(d.head_track.back() == -1);
      for (std::size_t r = 1; r < d.height(); ++r) {
        std::size_t diff = 0;
        for (std::uint64_t i = 0; i < d.width; ++i) diff += d.cell(r, i) != d.cell(r - 1, i);
        REQUIRE(diff <= 1);
        REQUIRE(std::llabs(d.head_track[r] - d.head_track[r - 1]) == 1);
      }
    }
  }
}

TEST_CASE("rule 2205 walks to the left end of its input and back") {
  const auto d = record_diagram(decode_rule(2205, {2, 2}), 5, 1000);
  std::int64_t far = 0;
  std::size_t turn = 0;
  for (std::size_t r = 0; r < d.height(); ++r) {
    if (d.head_track[r] > far) far = d.head_track[r], turn = r;
  }
  CHECK(far == 6);
  // Outward leg reaches the end, the way back never goes further left.
  for (std::size_t r = turn; r + 1 < d.height(); ++r) CHECK(d.head_track[r] <= far);
  CHECK(d.height() == 48);
}

TEST_CASE("rule 1351 diagram height is exponential") {
  const auto d = record_diagram(decode_rule(1351, {2, 2}), 5, 1000);
  CHECK(d.height() == 254);
  CHECK(d.rows.front() == std::vector<Color>(6, kBlack));
  CHECK(canonical_output(d.rows.back()).to_string() == "111111");
}

TEST_CASE("one-step halt gives two rows") {
  const auto d = record_diagram(decode_rule(1 * 512, {2, 2}), 4, 10);
  CHECK(d.height() == 2);
}

TEST_CASE("no diagram without a halt") {
  try {
    record_diagram(decode_rule(0, {2, 2}), 0, 100);
    FAIL("no exception");
  } catch (const NoDiagramError& e) {
    CHECK(e.outcome().status == RunStatus::kDivergentLeftEscape);
  }
}

}  // TEST_SUITE
