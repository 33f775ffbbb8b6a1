#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmspace/explorer.hpp"

namespace tmspace {

// Per probe input either an output word or certified divergence. Stored in
// its canonical byte form: each entry is the 0/1 word or "D", terminated by
// ';'. Equal bytes <=> pointwise equal outcomes.
class FunctionSignature {
 public:
  FunctionSignature() = default;
  // Throws std::invalid_argument if any probe exhausted its budget.
  static FunctionSignature of(const SweepRecord& record);
  static FunctionSignature from_bytes(std::string bytes);

  const std::string& bytes() const { return bytes_; }
  // nullopt marks divergence.
  std::vector<std::optional<std::string>> outcomes() const;

  friend bool operator==(const FunctionSignature&, const FunctionSignature&) = default;
  friend auto operator<=>(const FunctionSignature&, const FunctionSignature&) = default;

 private:
  std::string bytes_;
};

// The fastest member of a group: least total steps over the halting probes,
// ties to the lowest rule number.
struct Representative {
  RuleNumber rule = 0;
  std::vector<std::uint64_t> steps;  // per probe; 0 where the function diverges
  std::uint64_t total_steps = 0;

  friend bool operator==(const Representative&, const Representative&) = default;
};

struct FunctionGroup {
  std::vector<RuleNumber> members;  // ascending
  Representative fastest;

  friend bool operator==(const FunctionGroup&, const FunctionGroup&) = default;
};

struct FunctionCatalog {
  SpaceId space;
  ProbeSet probe;  // probe.budget is the budget the classification reached
  CodecConvention convention;
  std::map<FunctionSignature, FunctionGroup> groups;
  std::vector<RuleNumber> unclassified;  // ascending

  std::uint64_t classified_count() const;
  friend bool operator==(const FunctionCatalog&, const FunctionCatalog&) = default;
};

class IncompleteResultsError : public std::runtime_error {
 public:
  IncompleteResultsError(const std::string& what, std::vector<std::pair<RuleNumber, RuleNumber>> missing)
      : std::runtime_error(what), missing_(std::move(missing)) {}
  // Half-open rule ranges with no record.
  const std::vector<std::pair<RuleNumber, RuleNumber>>& missing() const { return missing_; }

 private:
  std::vector<std::pair<RuleNumber, RuleNumber>> missing_;
};

// Incremental form of classify_functions for streamed results. Records may
// arrive in any order; the finished catalog does not depend on it.
class CatalogBuilder {
 public:
  CatalogBuilder(SpaceId space, ProbeSet probe, CodecConvention convention);
  void add(const SweepRecord& record);
  // Checks every rule of the space was added exactly once.
  FunctionCatalog finish(bool require_complete = true);

 private:
  FunctionCatalog catalog_;
  std::vector<RuleNumber> seen_;
};

FunctionCatalog classify_functions(const SweepResultSet& results);

struct EscalationOptions {
  unsigned parallelism = 1;
};

// Re-runs the unclassified machines at budget * factor and merges.
FunctionCatalog escalate_budget(const FunctionCatalog& catalog, std::uint64_t factor,
                                const EscalationOptions& options = {});

// Applies the probe's budget_schedule in order, stopping early once nothing
// is unclassified. Then keeps applying the last factor while
// budget stays within max_budget and machines remain unclassified.
FunctionCatalog escalate_to_fixpoint(FunctionCatalog catalog, std::uint64_t max_budget,
                                     const EscalationOptions& options = {});

struct ContainmentReport {
  std::size_t small_functions = 0;
  std::size_t contained = 0;
  std::vector<FunctionSignature> violations;

  bool complete() const { return violations.empty(); }
};

class ProbeMismatchError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Throws ProbeMismatchError when the catalogs use different probe inputs or
// codec conventions.
ContainmentReport containment_check(const FunctionCatalog& small, const FunctionCatalog& large);
void require_comparable(const FunctionCatalog& a, const FunctionCatalog& b);

}  // namespace tmspace
