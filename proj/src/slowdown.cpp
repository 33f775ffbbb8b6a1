#include "tmspace/slowdown.hpp"

#include <algorithm>
#include <optional>

#include "tmspace/runtime_fit.hpp"

namespace tmspace {

std::string to_string(Aggregate aggregate) {
  switch (aggregate) {
    case Aggregate::kMean: return "mean";
    case Aggregate::kWorstCase: return "worst-case";
    case Aggregate::kHarmonicMean: return "harmonic-mean";
    case Aggregate::kAsymptotic: return "asymptotic";
  }
  return "?";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kSlowDown: return "slow-down";
    case Verdict::kTie: return "tie";
    case Verdict::kSpeedUp: return "speed-up";
  }
  return "?";
}

double aggregate_steps(Aggregate aggregate, const std::vector<std::uint32_t>& inputs,
                       const std::vector<std::uint64_t>& steps) {
  std::vector<double> x, t;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] == 0) continue;  // diverging probe
    x.push_back(inputs[i]);
    t.push_back(static_cast<double>(steps[i]));
  }
  if (t.empty()) return 0;
  switch (aggregate) {
    case Aggregate::kMean: {
      double sum = 0;
      for (double v : t) sum += v;
      return sum / static_cast<double>(t.size());
    }
    case Aggregate::kWorstCase:
      return *std::max_element(t.begin(), t.end());
    case Aggregate::kHarmonicMean: {
      double inv = 0;
      for (double v : t) inv += 1.0 / v;
      return static_cast<double>(t.size()) / inv;
    }
    case Aggregate::kAsymptotic: {
      const std::size_t from = t.size() / 2;
      if (t.size() - from < 2) return 0;
      const std::vector<double> xs(x.begin() + static_cast<std::ptrdiff_t>(from), x.end());
      const std::vector<double> ts(t.begin() + static_cast<std::ptrdiff_t>(from), t.end());
      return polynomial_least_squares(xs, ts, 1)[1];
    }
  }
  return 0;
}

SlowdownReport slowdown_report(const FunctionCatalog& small, const FunctionCatalog& large) {
  require_comparable(small, large);
  const auto& inputs = small.probe.inputs;
  SlowdownReport report;
  for (const auto& [sig, group] : small.groups) {
    const auto it = large.groups.find(sig);
    if (it == large.groups.end()) continue;
    SlowdownEntry e;
    e.signature = sig;
    e.small = group.fastest;
    e.large = it->second.fastest;
    for (std::size_t a = 0; a < kAggregates.size(); ++a) {
      e.small_value[a] = aggregate_steps(kAggregates[a], inputs, e.small.steps);
      e.large_value[a] = aggregate_steps(kAggregates[a], inputs, e.large.steps);
      if (e.large_value[a] > e.small_value[a]) {
        e.verdict[a] = Verdict::kSlowDown;
        ++report.slow_down[a];
      } else if (e.large_value[a] < e.small_value[a]) {
        e.verdict[a] = Verdict::kSpeedUp;
        ++report.speed_up[a];
      } else {
        e.verdict[a] = Verdict::kTie;
        ++report.ties[a];
      }
    }
    std::optional<double> first_ratio;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (e.small.steps[i] == 0 || e.large.steps[i] == 0) continue;
      const double ratio = static_cast<double>(e.small.steps[i]) / static_cast<double>(e.large.steps[i]);
      e.max_speedup_ratio = std::max(e.max_speedup_ratio, ratio);
      if (!first_ratio) first_ratio = std::max(1.0, ratio);
      if (ratio > *first_ratio * (inputs[i] + 1.0)) e.speedup_at_most_linear = false;
    }
    if (!e.speedup_at_most_linear) ++report.superlinear_speedups;
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace tmspace
