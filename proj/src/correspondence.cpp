#include "tmspace/correspondence.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace tmspace {

double CorrespondenceReport::linear_agreement() const {
  return linear_total ? static_cast<double>(linear_agree) / static_cast<double>(linear_total) : 1.0;
}

double CorrespondenceReport::exponential_agreement() const {
  return exponential_total ? static_cast<double>(exponential_agree) / static_cast<double>(exponential_total) : 1.0;
}

namespace {

bool halts_everywhere(const FunctionSignature& sig) {
  const auto outcomes = sig.outcomes();
  return std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.has_value(); });
}

CorrespondenceEntry analyse(const FunctionCatalog& catalog, RuleNumber number, const ProbeSet& probe) {
  const MachineRule rule = decode_rule(number, catalog.space, catalog.convention);
  CorrespondenceEntry entry;
  entry.rule = number;
  const SweepRecord record = sweep_rule(rule, probe);
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < probe.inputs.size(); ++i) {
    points.emplace_back(probe.inputs[i], static_cast<double>(record.results[i].steps));
  }
  entry.runtime = fit_runtime_class(points);
  entry.dimension = fractal_dimension(rule, probe);
  return entry;
}

}  // namespace

CorrespondenceReport correspondence_report(const FunctionCatalog& catalog, std::uint64_t budget,
                                           const CorrespondenceThresholds& thresholds,
                                           unsigned parallelism) {
  CorrespondenceReport report;
  report.space = catalog.space;
  report.thresholds = thresholds;

  std::vector<RuleNumber> rules;
  for (const auto& [sig, group] : catalog.groups) {
    if (halts_everywhere(sig)) rules.insert(rules.end(), group.members.begin(), group.members.end());
  }
  std::sort(rules.begin(), rules.end());

  ProbeSet probe = catalog.probe;
  probe.budget = budget;
  report.entries.resize(rules.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rules.size();) report.entries[i] = analyse(catalog, rules[i], probe);
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < std::max(1u, parallelism); ++t) pool.emplace_back(worker);
    worker();
  }

  for (const auto& e : report.entries) {
    if (e.dimension.degenerate) {
      ++report.degenerate;
      continue;
    }
    const double d = e.dimension.extrapolated;
    if (e.runtime.kind == RuntimeKind::kLinear) {
      ++report.linear_total;
      if (d >= thresholds.high) {
        ++report.linear_agree;
      } else {
        report.linear_exceptions.push_back(e.rule);
      }
    } else if (e.runtime.kind == RuntimeKind::kExponential) {
      ++report.exponential_total;
      if (d <= thresholds.low) {
        ++report.exponential_agree;
      } else {
        report.exponential_exceptions.push_back(e.rule);
      }
    } else {
      ++report.other_classes;
    }
  }
  return report;
}

}  // namespace tmspace
