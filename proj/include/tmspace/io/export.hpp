#pragma once

#include <iosfwd>
#include <string>

#include "tmspace/catalog.hpp"
#include "tmspace/correspondence.hpp"
#include "tmspace/histogram.hpp"
#include "tmspace/slowdown.hpp"

namespace tmspace::io {

enum class TableFormat { kCsv, kJsonl };
TableFormat parse_table_format(const std::string& name);

// csv: a "# key=value ..." metadata line, a header "bin_start,bin_end,count",
// one row per bin in ascending order and a final "total,,<halting>" row.
// jsonl: a metadata object, one object per bin, then {"total":...}.
std::string export_histogram(const HaltingHistogram& hist, TableFormat format);
HaltingHistogram import_histogram(const std::string& text);

// First line: space, probe, fingerprint and unclassified rules. Then one line
// per function group in signature order.
std::string export_catalog(const FunctionCatalog& catalog);
FunctionCatalog import_catalog(const std::string& text);

std::string export_correspondence(const CorrespondenceReport& report, TableFormat format);
std::string export_slowdown(const SlowdownReport& report, TableFormat format);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tmspace::io
