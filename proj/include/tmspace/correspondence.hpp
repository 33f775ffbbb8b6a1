#pragma once

#include <cstdint>
#include <vector>

#include "tmspace/catalog.hpp"
#include "tmspace/dimension.hpp"
#include "tmspace/runtime_fit.hpp"

namespace tmspace {

struct CorrespondenceThresholds {
  double high = 1.6;  // linear-time machines should reach at least this
  double low = 1.4;   // exponential-time machines should stay at or below this
};

struct CorrespondenceEntry {
  RuleNumber rule = 0;
  RuntimeClass runtime;
  DimensionEstimate dimension;
};

struct CorrespondenceReport {
  SpaceId space;
  CorrespondenceThresholds thresholds;
  std::vector<CorrespondenceEntry> entries;  // ascending rule number

  std::uint64_t linear_total = 0;
  std::uint64_t linear_agree = 0;
  std::uint64_t exponential_total = 0;
  std::uint64_t exponential_agree = 0;
  std::vector<RuleNumber> linear_exceptions;
  std::vector<RuleNumber> exponential_exceptions;
  std::uint64_t degenerate = 0;
  std::uint64_t other_classes = 0;  // constant, polynomial, unclassified

  double linear_agreement() const;
  double exponential_agreement() const;
};

// Every catalog machine halting on all probes gets a runtime class and a
// dimension estimate at `budget`. Only Linear and Exponential machines with
// non-degenerate estimates enter the agreement tallies.
CorrespondenceReport correspondence_report(const FunctionCatalog& catalog, std::uint64_t budget,
                                           const CorrespondenceThresholds& thresholds = {},
                                           unsigned parallelism = 1);

}  // namespace tmspace
