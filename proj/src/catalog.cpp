#include "tmspace/catalog.hpp"

#include <algorithm>

namespace tmspace {

FunctionSignature FunctionSignature::of(const SweepRecord& record) {
  FunctionSignature sig;
  for (const auto& r : record.results) {
    if (r.status == RunStatus::kBudgetExhausted) {
      throw std::invalid_argument("rule " + std::to_string(record.rule) + " exhausted its budget");
    }
    sig.bytes_ += r.halted() ? r.output : std::string("D");
    sig.bytes_ += ';';
  }
  return sig;
}

FunctionSignature FunctionSignature::from_bytes(std::string bytes) {
  if (!bytes.empty() && bytes.back() != ';') throw std::invalid_argument("malformed signature bytes");
  for (char c : bytes) {
    if (c != '0' && c != '1' && c != 'D' && c != ';' && !(c >= '2' && c <= '9')) {
      throw std::invalid_argument("malformed signature bytes");
    }
  }
  FunctionSignature sig;
  sig.bytes_ = std::move(bytes);
  return sig;
}

std::vector<std::optional<std::string>> FunctionSignature::outcomes() const {
  std::vector<std::optional<std::string>> out;
  std::string current;
  for (char c : bytes_) {
    if (c == ';') {
      if (current == "D") {
        out.emplace_back(std::nullopt);
      } else {
        out.emplace_back(current);
      }
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  return out;
}

std::uint64_t FunctionCatalog::classified_count() const {
  std::uint64_t n = 0;
  for (const auto& [sig, group] : groups) n += group.members.size();
  return n;
}

namespace {

Representative representative_of(const SweepRecord& record) {
  Representative rep;
  rep.rule = record.rule;
  rep.steps.reserve(record.results.size());
  for (const auto& r : record.results) {
    const std::uint64_t s = r.halted() ? r.steps : 0;
    rep.steps.push_back(s);
    rep.total_steps += s;
  }
  return rep;
}

bool faster(const Representative& a, const Representative& b) {
  return a.total_steps != b.total_steps ? a.total_steps < b.total_steps : a.rule < b.rule;
}

void insert_sorted(std::vector<RuleNumber>& v, RuleNumber r) {
  v.insert(std::upper_bound(v.begin(), v.end(), r), r);
}

void add_classified(FunctionCatalog& catalog, const SweepRecord& record) {
  auto [it, inserted] = catalog.groups.try_emplace(FunctionSignature::of(record));
  FunctionGroup& group = it->second;
  Representative rep = representative_of(record);
  if (inserted || faster(rep, group.fastest)) group.fastest = std::move(rep);
  if (group.members.empty() || group.members.back() < record.rule) {
    group.members.push_back(record.rule);
  } else {
    insert_sorted(group.members, record.rule);
  }
}

}  // namespace

CatalogBuilder::CatalogBuilder(SpaceId space, ProbeSet probe, CodecConvention convention) {
  catalog_.space = space;
  catalog_.probe = std::move(probe);
  catalog_.convention = convention;
}

void CatalogBuilder::add(const SweepRecord& record) {
  if (record.results.size() != catalog_.probe.inputs.size()) {
    throw std::invalid_argument("record for rule " + std::to_string(record.rule) +
                                " does not match the probe set");
  }
  seen_.push_back(record.rule);
  if (record.any_budget_exhausted()) {
    catalog_.unclassified.push_back(record.rule);
  } else {
    add_classified(catalog_, record);
  }
}

FunctionCatalog CatalogBuilder::finish(bool require_complete) {
  std::sort(catalog_.unclassified.begin(), catalog_.unclassified.end());
  if (require_complete) {
    std::sort(seen_.begin(), seen_.end());
    const std::uint64_t size = catalog_.space.size();
    std::vector<std::pair<RuleNumber, RuleNumber>> missing;
    RuleNumber expect = 0;
    for (std::size_t i = 0; i < seen_.size(); ++i) {
      if (i > 0 && seen_[i] == seen_[i - 1]) {
        throw std::invalid_argument("rule " + std::to_string(seen_[i]) + " appears twice in the results");
      }
      if (seen_[i] > expect) missing.emplace_back(expect, seen_[i]);
      expect = seen_[i] + 1;
    }
    if (expect < size) missing.emplace_back(expect, size);
    if (!missing.empty()) {
      std::string what = "incomplete results for " + catalog_.space.to_string() + "; missing rules";
      for (std::size_t i = 0; i < missing.size() && i < 8; ++i) {
        what += " [" + std::to_string(missing[i].first) + "," + std::to_string(missing[i].second) + ")";
      }
      if (missing.size() > 8) what += " ...";
      throw IncompleteResultsError(what, std::move(missing));
    }
  }
  return std::move(catalog_);
}

FunctionCatalog classify_functions(const SweepResultSet& results) {
  CatalogBuilder builder(results.space, results.probe, results.convention);
  for (const auto& record : results.records) builder.add(record);
  return builder.finish();
}

FunctionCatalog escalate_budget(const FunctionCatalog& catalog, std::uint64_t factor,
                                const EscalationOptions& options) {
  if (factor <= 1) throw std::invalid_argument("escalation factor must exceed 1");
  FunctionCatalog next = catalog;
  next.probe.budget = catalog.probe.budget * factor;
  if (catalog.unclassified.empty()) return next;

  SweepOptions sweep;
  sweep.parallelism = options.parallelism;
  sweep.convention = catalog.convention;
  sweep.stop_at_exhausted = true;
  const SweepResultSet rerun = sweep_rules(catalog.space, catalog.unclassified, next.probe, sweep);
  next.unclassified.clear();
  for (const auto& record : rerun.records) {
    if (record.any_budget_exhausted()) {
      next.unclassified.push_back(record.rule);
    } else {
      add_classified(next, record);
    }
  }
  return next;
}

FunctionCatalog escalate_to_fixpoint(FunctionCatalog catalog, std::uint64_t max_budget,
                                     const EscalationOptions& options) {
  const auto schedule = catalog.probe.budget_schedule;
  for (auto factor : schedule) {
    if (catalog.unclassified.empty() || catalog.probe.budget * factor > max_budget) return catalog;
    catalog = escalate_budget(catalog, factor, options);
  }
  const std::uint64_t factor = schedule.empty() ? 10 : schedule.back();
  while (!catalog.unclassified.empty() && catalog.probe.budget * factor <= max_budget) {
    catalog = escalate_budget(catalog, factor, options);
  }
  return catalog;
}

void require_comparable(const FunctionCatalog& a, const FunctionCatalog& b) {
  if (!a.probe.same_inputs(b.probe)) throw ProbeMismatchError("catalogs use different probe inputs");
  if (!(a.convention == b.convention)) {
    throw ProbeMismatchError("catalogs use different codec conventions: " + a.convention.fingerprint() +
                             " vs " + b.convention.fingerprint());
  }
}

ContainmentReport containment_check(const FunctionCatalog& small, const FunctionCatalog& large) {
  require_comparable(small, large);
  ContainmentReport report;
  report.small_functions = small.groups.size();
  for (const auto& [sig, group] : small.groups) {
    if (large.groups.count(sig)) {
      ++report.contained;
    } else {
      report.violations.push_back(sig);
    }
  }
  return report;
}

}  // namespace tmspace
