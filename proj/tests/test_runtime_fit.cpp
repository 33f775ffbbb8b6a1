#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "tmspace/machine.hpp"
#include "tmspace/run.hpp"
#include "tmspace/runtime_fit.hpp"

using namespace tmspace;

namespace {

using Points = std::vector<std::pair<double, double>>;

Points sample(const std::function<double(double)>& f, std::mt19937_64& rng, double noise) {
  std::uniform_real_distribution<double> jitter(-noise, noise);
  Points p;
  for (int n = 0; n <= 20; ++n) p.emplace_back(n, f(n) * (1 + jitter(rng)));
  return p;
}

Points measured(RuleNumber rule, std::uint32_t last) {
  Points p;
  const auto r = decode_rule(rule, {2, 2});
  for (std::uint32_t n = 0; n <= last; ++n) p.emplace_back(n, run(r, n, 10'000'000).steps);
  return p;
}

}  // namespace

TEST_SUITE("runtime fit") {

TEST_CASE("least squares recovers an exact polynomial") {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i);
    y.push_back(3 - 2 * i + 0.5 * i * i);
  }
  const auto c = polynomial_least_squares(x, y, 2);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(3).epsilon(1e-9));
  CHECK(c[1] == doctest::Approx(-2).epsilon(1e-9));
  CHECK(c[2] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("constant runtimes") {
  Points p;
  for (int n = 0; n <= 20; ++n) p.emplace_back(n, 7);
  CHECK(fit_runtime_class(p).kind == RuntimeKind::kConstant);
}

TEST_CASE("too few points") {
  Points p{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
  CHECK_THROWS_AS(fit_runtime_class(p), std::invalid_argument);
  p.emplace_back(5, 0);
  CHECK_THROWS_AS(fit_runtime_class(p), std::invalid_argument);
}

TEST_CASE("rule 2205 is linear, rule 1351 exponential") {
  CHECK(fit_runtime_class(measured(2205, 20)).kind == RuntimeKind::kLinear);
  const auto e = fit_runtime_class(measured(1351, 12));
  CHECK(e.kind == RuntimeKind::kExponential);
  CHECK(e.log_fit_quality >= 0.98);
}

TEST_CASE("labels") {
  RuntimeClass c;
  c.kind = RuntimeKind::kPolynomial;
  c.degree = 3;
  CHECK(c.label() == "polynomial(3)");
  c.kind = RuntimeKind::kLinear;
  CHECK(c.label() == "linear");
}

TEST_CASE("synthetic recovery with 1% noise") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 1);
  auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
  struct Model {
    const char* name;
    RuntimeKind kind;
    int degree;
    std::function<std::function<double(double)>()> draw;
  };
  const std::vector<Model> models{
      {"constant", RuntimeKind::kConstant, 0,
       [&] {
         const double c = in(1, 1000);
         return [c](double) { return c; };
       }},
      {"linear", RuntimeKind::kLinear, 1,
       [&] {
         const double a = in(1, 50), b = in(1, 20);
         return [a, b](double n) { return a + b * n; };
       }},
      {"quadratic", RuntimeKind::kPolynomial, 2,
       [&] {
         const double a = in(1, 50), b = in(0, 10), c = in(1, 5);
         return [a, b, c](double n) { return a + b * n + c * n * n; };
       }},
      {"cubic", RuntimeKind::kPolynomial, 3,
       [&] {
         const double a = in(1, 50), b = in(0, 10), c = in(0, 2), d = in(0.5, 3);
         return [a, b, c, d](double n) { return a + b * n + c * n * n + d * n * n * n; };
       }},
      {"exponential", RuntimeKind::kExponential, 0,
       [&] {
         const double a = in(1, 10), r = in(1.5, 3);
         return [a, r](double n) { return a * std::pow(r, n); };
       }},
  };
  for (const auto& m : models) {
    int hits = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto c = fit_runtime_class(sample(m.draw(), rng, 0.01));
      hits += c.kind == m.kind && (m.kind != RuntimeKind::kPolynomial || c.degree == m.degree);
    }
    INFO(m.name << " recovered " << hits << "/1000");
    CHECK(hits >= 990);
  }
}

}  // TEST_SUITE
