#include "tmspace/io/export.hpp"

#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace tmspace::io {

using nlohmann::ordered_json;

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::kCsv;
  if (name == "jsonl") return TableFormat::kJsonl;
  throw std::invalid_argument("unknown table format '" + name + "' (csv, jsonl)");
}

namespace {

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::uint64_t> split_numbers(const std::string& s) {
  std::vector<std::uint64_t> v;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) v.push_back(std::stoull(item));
  return v;
}

ordered_json histogram_meta(const HaltingHistogram& h) {
  ordered_json j;
  j["states"] = h.space.states;
  j["colors"] = h.space.colors;
  j["inputs"] = h.probe.inputs;
  j["budget"] = h.probe.budget;
  j["schedule"] = h.probe.budget_schedule;
  j["exact_limit"] = h.exact_limit;
  j["machines"] = h.machines;
  j["divergent"] = h.divergent;
  j["budget_exhausted"] = h.budget_exhausted;
  return j;
}

void read_histogram_meta(const nlohmann::json& j, HaltingHistogram& h) {
  h.space.states = j.at("states").get<std::uint32_t>();
  h.space.colors = j.at("colors").get<std::uint32_t>();
  h.probe.inputs = j.at("inputs").get<std::vector<std::uint32_t>>();
  h.probe.budget = j.at("budget").get<std::uint64_t>();
  h.probe.budget_schedule = j.at("schedule").get<std::vector<std::uint64_t>>();
  h.exact_limit = j.at("exact_limit").get<std::uint64_t>();
  h.machines = j.at("machines").get<std::uint64_t>();
  h.divergent = j.at("divergent").get<std::uint64_t>();
  h.budget_exhausted = j.at("budget_exhausted").get<std::uint64_t>();
}

}  // namespace

std::string export_histogram(const HaltingHistogram& h, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::kCsv) {
    out << "# states=" << h.space.states << " colors=" << h.space.colors << " inputs=" << join(h.probe.inputs)
        << " budget=" << h.probe.budget << " schedule=" << join(h.probe.budget_schedule)
        << " exact_limit=" << h.exact_limit << " machines=" << h.machines
        << " divergent=" << h.divergent << " budget_exhausted=" << h.budget_exhausted << '\n';
    out << "bin_start,bin_end,count\n";
    for (const auto& [start, count] : h.bins) out << start << ',' << h.bin_end(start) << ',' << count << '\n';
    out << "total,," << h.halting() << '\n';
  } else {
    out << histogram_meta(h).dump() << '\n';
    for (const auto& [start, count] : h.bins) {
      ordered_json j;
      j["bin_start"] = start;
      j["bin_end"] = h.bin_end(start);
      j["count"] = count;
      out << j.dump() << '\n';
    }
    ordered_json total;
    total["total"] = h.halting();
    out << total.dump() << '\n';
  }
  return out.str();
}

HaltingHistogram import_histogram(const std::string& text) {
  HaltingHistogram h;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty histogram document");
  std::optional<std::uint64_t> total;
  if (line.rfind("# ", 0) == 0) {
    std::istringstream meta(line.substr(2));
    nlohmann::json j;
    for (std::string kv; meta >> kv;) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("malformed histogram metadata '" + kv + "'");
      const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
      if (key == "inputs" || key == "schedule") {
        j[key] = split_numbers(value);
      } else {
        j[key] = std::stoull(value);
      }
    }
    read_histogram_meta(j, h);
    if (!std::getline(in, line) || line != "bin_start,bin_end,count") {
      throw std::invalid_argument("missing histogram csv header");
    }
    while (std::getline(in, line)) {
      if (line.rfind("total,,", 0) == 0) {
        total = std::stoull(line.substr(7));
        continue;
      }
      std::istringstream row(line);
      std::string a, b, c;
      if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
        throw std::invalid_argument("malformed histogram row '" + line + "'");
      }
      h.bins[std::stoull(a)] = std::stoull(c);
    }
  } else {
    read_histogram_meta(nlohmann::json::parse(line), h);
    while (std::getline(in, line)) {
      const auto j = nlohmann::json::parse(line);
      if (j.contains("total")) {
        total = j["total"].get<std::uint64_t>();
      } else {
        h.bins[j.at("bin_start").get<std::uint64_t>()] = j.at("count").get<std::uint64_t>();
      }
    }
  }
  if (!total || *total != h.halting()) throw std::invalid_argument("histogram total does not match its bins");
  return h;
}

std::string export_catalog(const FunctionCatalog& c) {
  std::ostringstream out;
  ordered_json head;
  head["states"] = c.space.states;
  head["colors"] = c.space.colors;
  head["inputs"] = c.probe.inputs;
  head["budget"] = c.probe.budget;
  head["budget_schedule"] = c.probe.budget_schedule;
  head["move_bit"] = c.convention.move_bit == MoveBit::kOddMovesRight ? "odd-right" : "odd-left";
  head["fingerprint"] = c.convention.fingerprint();
  head["groups"] = c.groups.size();
  head["unclassified"] = c.unclassified;
  out << head.dump() << '\n';
  for (const auto& [sig, group] : c.groups) {
    ordered_json j;
    j["signature"] = sig.bytes();
    j["fastest"] = group.fastest.rule;
    j["fastest_steps"] = group.fastest.steps;
    j["members"] = group.members;
    out << j.dump() << '\n';
  }
  return out.str();
}

FunctionCatalog import_catalog(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty catalog document");
  FunctionCatalog c;
  try {
    const auto head = nlohmann::json::parse(line);
    c.space.states = head.at("states").get<std::uint32_t>();
    c.space.colors = head.at("colors").get<std::uint32_t>();
    c.probe.inputs = head.at("inputs").get<std::vector<std::uint32_t>>();
    c.probe.budget = head.at("budget").get<std::uint64_t>();
    c.probe.budget_schedule = head.at("budget_schedule").get<std::vector<std::uint64_t>>();
    c.convention.move_bit =
        head.at("move_bit").get<std::string>() == "odd-left" ? MoveBit::kOddMovesLeft : MoveBit::kOddMovesRight;
    if (head.at("fingerprint").get<std::string>() != c.convention.fingerprint()) {
      throw std::invalid_argument("catalog fingerprint does not match this build's conventions");
    }
    c.unclassified = head.at("unclassified").get<std::vector<RuleNumber>>();
    const auto groups = head.at("groups").get<std::size_t>();
    while (std::getline(in, line)) {
      const auto j = nlohmann::json::parse(line);
      FunctionGroup g;
      g.members = j.at("members").get<std::vector<RuleNumber>>();
      g.fastest.rule = j.at("fastest").get<RuleNumber>();
      g.fastest.steps = j.at("fastest_steps").get<std::vector<std::uint64_t>>();
      for (auto s : g.fastest.steps) g.fastest.total_steps += s;
      c.groups.emplace(FunctionSignature::from_bytes(j.at("signature").get<std::string>()), std::move(g));
    }
    if (c.groups.size() != groups) throw std::invalid_argument("catalog group count mismatch");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed catalog: ") + e.what());
  }
  return c;
}

std::string export_correspondence(const CorrespondenceReport& r, TableFormat format) {
  std::ostringstream out;
  out << std::setprecision(6);
  if (format == TableFormat::kCsv) {
    out << "rule,runtime_class,extrapolated_dimension,trend,degenerate,last_slope\n";
    for (const auto& e : r.entries) {
      out << e.rule << ',' << e.runtime.label() << ',' << e.dimension.extrapolated << ','
          << to_string(e.dimension.trend) << ',' << (e.dimension.degenerate ? 1 : 0) << ','
          << (e.dimension.per_input.empty() ? 0.0 : e.dimension.per_input.back().slope) << '\n';
    }
    out << "# linear " << r.linear_agree << "/" << r.linear_total << " at >= " << r.thresholds.high
        << "; exponential " << r.exponential_agree << "/" << r.exponential_total << " at <= " << r.thresholds.low
        << "; degenerate " << r.degenerate << "; other " << r.other_classes << '\n';
  } else {
    for (const auto& e : r.entries) {
      ordered_json j;
      j["rule"] = e.rule;
      j["runtime_class"] = e.runtime.label();
      j["log_fit_quality"] = e.runtime.log_fit_quality;
      j["extrapolated_dimension"] = e.dimension.extrapolated;
      j["trend"] = to_string(e.dimension.trend);
      j["degenerate"] = e.dimension.degenerate;
      out << j.dump() << '\n';
    }
    ordered_json s;
    s["linear_total"] = r.linear_total;
    s["linear_agree"] = r.linear_agree;
    s["linear_exceptions"] = r.linear_exceptions;
    s["exponential_total"] = r.exponential_total;
    s["exponential_agree"] = r.exponential_agree;
    s["exponential_exceptions"] = r.exponential_exceptions;
    s["degenerate"] = r.degenerate;
    s["other_classes"] = r.other_classes;
    out << s.dump() << '\n';
  }
  return out.str();
}

std::string export_slowdown(const SlowdownReport& r, TableFormat format) {
  std::ostringstream out;
  out << std::setprecision(10);
  if (format == TableFormat::kCsv) {
    out << "signature,small_rule,large_rule";
    for (auto a : kAggregates) out << ',' << to_string(a) << "_small," << to_string(a) << "_large," << to_string(a);
    out << ",max_speedup_ratio\n";
    for (const auto& e : r.entries) {
      out << '"' << e.signature.bytes() << "\"," << e.small.rule << ',' << e.large.rule;
      for (std::size_t a = 0; a < kAggregates.size(); ++a) {
        out << ',' << e.small_value[a] << ',' << e.large_value[a] << ',' << to_string(e.verdict[a]);
      }
      out << ',' << e.max_speedup_ratio << '\n';
    }
    for (std::size_t a = 0; a < kAggregates.size(); ++a) {
      out << "# " << to_string(kAggregates[a]) << ": slow-down " << r.slow_down[a] << ", tie " << r.ties[a]
          << ", speed-up " << r.speed_up[a] << '\n';
    }
  } else {
    for (const auto& e : r.entries) {
      ordered_json j;
      j["signature"] = e.signature.bytes();
      j["small_rule"] = e.small.rule;
      j["large_rule"] = e.large.rule;
      for (std::size_t a = 0; a < kAggregates.size(); ++a) j[to_string(kAggregates[a])] = to_string(e.verdict[a]);
      j["max_speedup_ratio"] = e.max_speedup_ratio;
      out << j.dump() << '\n';
    }
    ordered_json s;
    for (std::size_t a = 0; a < kAggregates.size(); ++a) {
      s[to_string(kAggregates[a])] = {{"slow_down", r.slow_down[a]}, {"tie", r.ties[a]}, {"speed_up", r.speed_up[a]}};
    }
    s["superlinear_speedups"] = r.superlinear_speedups;
    out << s.dump() << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace tmspace::io
