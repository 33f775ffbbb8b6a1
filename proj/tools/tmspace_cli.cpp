#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tmspace/catalog.hpp"
#include "tmspace/correspondence.hpp"
#include "tmspace/diagram.hpp"
#include "tmspace/dimension.hpp"
#include "tmspace/explorer.hpp"
#include "tmspace/histogram.hpp"
#include "tmspace/io/export.hpp"
#include "tmspace/io/manifest.hpp"
#include "tmspace/io/render.hpp"
#include "tmspace/io/result_store.hpp"
#include "tmspace/runtime_fit.hpp"
#include "tmspace/slowdown.hpp"

namespace fs = std::filesystem;
using namespace tmspace;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 1;
constexpr int kExitMismatch = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lines "key=value" become "--key=value"; "key=true" becomes "--key" and
// "key=false" is dropped. Blank lines and lines starting with '#' are skipped.
std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::vector<std::string> args;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(number) + ": expected key=value, got '" + line + "'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(number) + ": empty key");
    if (value == "true") {
      args.push_back("--" + key);
    } else if (value != "false") {
      args.push_back("--" + key + "=" + value);
    }
  }
  return args;
}

// Splices config-file flags right after the subcommand name so that flags
// given on the command line, which come later, take precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> raw(argv + 1, argv + argc);
  std::vector<std::string> from_file, rest;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == "--config") {
      if (i + 1 == raw.size()) throw UsageError("--config needs a file");
      auto extra = read_config(raw[++i]);
      from_file.insert(from_file.end(), extra.begin(), extra.end());
    } else if (raw[i].rfind("--config=", 0) == 0) {
      auto extra = read_config(raw[i].substr(9));
      from_file.insert(from_file.end(), extra.begin(), extra.end());
    } else {
      rest.push_back(raw[i]);
    }
  }
  if (!rest.empty()) rest.insert(rest.begin() + 1, from_file.begin(), from_file.end());
  else rest = from_file;
  return rest;
}

MoveBit parse_move_bit(const std::string& name) {
  if (name == "odd-right") return MoveBit::kOddMovesRight;
  if (name == "odd-left") return MoveBit::kOddMovesLeft;
  throw UsageError("unknown move bit '" + name + "' (odd-right, odd-left)");
}

std::vector<std::uint64_t> parse_schedule(const std::string& text) {
  std::vector<std::uint64_t> factors;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) factors.push_back(std::stoull(item));
  }
  return factors;
}

void emit(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    io::write_file(path, content);
  }
}

std::string describe_outcome(const RunOutcome& outcome) {
  std::ostringstream s;
  s << to_string(outcome.status) << " after " << outcome.steps << " steps";
  if (outcome.output) s << ", output \"" << outcome.output->to_string() << "\"";
  s << ", max left extent " << outcome.max_left_extent;
  return s.str();
}

FunctionCatalog load_catalog(const fs::path& dir) {
  const auto store = io::ResultStore::open(dir);
  if (!fs::exists(store.catalog_path())) {
    throw std::runtime_error("no catalog in " + dir.string() + "; run classify first");
  }
  auto catalog = io::import_catalog(io::read_file(store.catalog_path().string()));
  if (catalog.convention.fingerprint() != store.manifest().fingerprint) {
    throw io::FingerprintMismatchError("catalog and manifest fingerprints differ in " + dir.string());
  }
  return catalog;
}

struct Common {
  std::string space = "2,2";
  std::string move_bit = "odd-right";
  std::uint64_t budget = 2'000'000;
  unsigned jobs = 1;

  CodecConvention convention() const { return CodecConvention{parse_move_bit(move_bit)}; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustive exploration of small Turing machine rule spaces"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Common common;
  auto add_space = [&](CLI::App* sub) {
    sub->add_option("--space", common.space, "Rule space as states,colors")->capture_default_str();
    sub->add_option("--move-bit", common.move_bit, "Move-bit convention (odd-right, odd-left)")
        ->capture_default_str();
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", common.budget, "Step budget per run")->capture_default_str()->check(
        CLI::PositiveNumber);
  };
  auto add_jobs = [&](CLI::App* sub) {
    sub->add_option("--jobs", common.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  };

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one machine on one input");
  RuleNumber rule_number = 0;
  std::uint32_t input = 0;
  std::string render_format;
  bool pad = false;
  std::string out_path;
  add_space(run_cmd);
  add_budget(run_cmd);
  run_cmd->add_option("--rule", rule_number, "Rule number")->required();
  run_cmd->add_option("--input", input, "Input n (n+1 black cells)")->required();
  run_cmd->add_option("--render", render_format, "Also render the diagram (ascii, pbm, svg)");
  run_cmd->add_flag("--pad", pad, "Pad diagram rows to a square");
  run_cmd->add_option("--out", out_path, "Diagram output file (default stdout)");

  // render
  auto* render_cmd = app.add_subcommand("render", "Render a space-time diagram");
  std::string diagram_format = "ascii";
  add_space(render_cmd);
  add_budget(render_cmd);
  render_cmd->add_option("--rule", rule_number, "Rule number")->required();
  render_cmd->add_option("--input", input, "Input n")->required();
  render_cmd->add_option("--format", diagram_format, "ascii, pbm or svg")->capture_default_str();
  render_cmd->add_flag("--pad", pad, "Pad diagram rows to a square");
  render_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run every machine of a space on the probe inputs");
  std::uint32_t input_count = 21;
  std::string schedule = "10";
  std::string dir;
  bool force = false;
  std::uint64_t max_ranges = 0;
  bool quiet = false;
  add_space(sweep_cmd);
  add_budget(sweep_cmd);
  add_jobs(sweep_cmd);
  sweep_cmd->add_option("--inputs", input_count, "Probe inputs 0..N-1")->capture_default_str()->check(
      CLI::PositiveNumber);
  sweep_cmd->add_option("--schedule", schedule, "Budget escalation factors, comma separated")
      ->capture_default_str();
  sweep_cmd->add_option("--out", dir, "Result directory")->required();
  sweep_cmd->add_flag("--force", force, "Allow spaces above the feasibility limit");
  sweep_cmd->add_option("--max-ranges", max_ranges, "Stop after this many new ranges (0 = all)");
  sweep_cmd->add_flag("--quiet", quiet, "No progress on stderr");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Group swept machines by computed function");
  std::uint64_t max_budget = 0;
  classify_cmd->add_option("--in", dir, "Result directory")->required();
  classify_cmd->add_option("--max-budget", max_budget, "Escalation ceiling (default 10x the sweep budget)");
  add_jobs(classify_cmd);

  // histogram
  auto* histogram_cmd = app.add_subcommand("histogram", "Halting-time histogram of a sweep");
  std::string table_format = "csv";
  std::uint64_t exact_limit = 64;
  histogram_cmd->add_option("--in", dir, "Result directory")->required();
  histogram_cmd->add_option("--format", table_format, "csv or jsonl")->capture_default_str();
  histogram_cmd->add_option("--exact-limit", exact_limit, "Steps below this get one bin each")
      ->capture_default_str();
  histogram_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // dimension
  auto* dimension_cmd = app.add_subcommand("dimension", "Runtime class and box-counting dimension of one machine");
  add_space(dimension_cmd);
  add_budget(dimension_cmd);
  dimension_cmd->add_option("--rule", rule_number, "Rule number")->required();
  dimension_cmd->add_option("--inputs", input_count, "Probe inputs 0..N-1")->capture_default_str();

  // report
  auto* report_cmd = app.add_subcommand("report", "Runtime class against dimension over a classified sweep");
  report_cmd->add_option("--in", dir, "Classified result directory")->required();
  report_cmd->add_option("--format", table_format, "csv or jsonl")->capture_default_str();
  report_cmd->add_option("--out", out_path, "Table output file (default stdout)");
  add_budget(report_cmd);
  add_jobs(report_cmd);

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Containment and slow-down between two classified sweeps");
  std::string small_dir, large_dir;
  compare_cmd->add_option("--small", small_dir, "Classified directory of the smaller space")->required();
  compare_cmd->add_option("--large", large_dir, "Classified directory of the larger space")->required();
  compare_cmd->add_option("--format", table_format, "csv or jsonl")->capture_default_str();
  compare_cmd->add_option("--out", out_path, "Slow-down table output file (default stdout)");

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed() || render_cmd->parsed()) {
      const auto space = parse_space(common.space);
      const auto rule = decode_rule(rule_number, space, common.convention());
      const std::string format = run_cmd->parsed() ? render_format : diagram_format;
      if (!format.empty()) {
        const auto kind = io::parse_diagram_format(format);
        try {
          const auto diagram = record_diagram(rule, input, common.budget);
          emit(io::render_diagram(diagram, kind, pad), out_path);
        } catch (const NoDiagramError& e) {
          std::cerr << "no diagram: " << describe_outcome(e.outcome()) << '\n';
          if (render_cmd->parsed()) return kExitFailure;
        }
      }
      if (run_cmd->parsed()) {
        const auto outcome = run(rule, input, common.budget);
        std::cout << "rule " << rule_number << " " << space.to_string() << " input " << input << ": "
                  << describe_outcome(outcome) << '\n';
      }
      return 0;
    }

    if (sweep_cmd->parsed()) {
      const auto space = parse_space(common.space);
      const auto probe = ProbeSet::first(input_count, common.budget, parse_schedule(schedule));
      probe.validate();
      const auto manifest = io::make_manifest(space, probe, common.convention());
      auto store = io::ResultStore::create_or_resume(dir, manifest);
      SweepOptions options;
      options.parallelism = common.jobs;
      options.convention = common.convention();
      options.force = force;
      options.max_new_ranges = max_ranges;
      if (!quiet) {
        options.progress = [](std::uint64_t done, std::uint64_t total) {
          if (done == total || done % 64 == 0) std::cerr << "ranges " << done << "/" << total << '\n';
        };
      }
      const auto stats = sweep_space(space, probe, options, store);
      std::cout << space.to_string() << ": " << stats.ranges_committed << " ranges swept, " << stats.ranges_skipped
                << " resumed, " << (stats.complete() ? "complete" : "incomplete") << " ("
                << stats.ranges_total << " ranges)\n";
      return 0;
    }

    if (classify_cmd->parsed()) {
      const auto store = io::ResultStore::open(dir);
      const auto& m = store.manifest();
      if (m.fingerprint != m.convention.fingerprint()) {
        throw io::FingerprintMismatchError("manifest fingerprint '" + m.fingerprint +
                                           "' does not match this build: '" + m.convention.fingerprint() + "'");
      }
      CatalogBuilder builder(m.space, m.probe, m.convention);
      store.for_each([&](const SweepRecord& r) { builder.add(r); });
      auto catalog = builder.finish();
      const std::uint64_t ceiling = max_budget ? max_budget : m.probe.budget * 10;
      catalog = escalate_to_fixpoint(std::move(catalog), ceiling, EscalationOptions{common.jobs});
      io::write_file(store.catalog_path().string(), io::export_catalog(catalog));
      std::cout << catalog.groups.size() << " functions, " << catalog.unclassified.size() << " unclassified\n";
      return 0;
    }

    if (histogram_cmd->parsed()) {
      const auto format = io::parse_table_format(table_format);
      const auto store = io::ResultStore::open(dir);
      HistogramBuilder builder(store.manifest().space, store.manifest().probe, exact_limit);
      store.for_each([&](const SweepRecord& r) { builder.add(r); });
      emit(io::export_histogram(builder.histogram(), format), out_path);
      return 0;
    }

    if (dimension_cmd->parsed()) {
      const auto space = parse_space(common.space);
      const auto rule = decode_rule(rule_number, space, common.convention());
      const auto probe = ProbeSet::first(input_count, common.budget);
      std::vector<std::pair<double, double>> points;
      for (auto n : probe.inputs) {
        const auto outcome = run(rule, n, common.budget);
        if (outcome.status != RunStatus::kHalted) throw NonHaltingProbeError(n, outcome.status);
        points.emplace_back(n, static_cast<double>(outcome.steps));
      }
      const auto runtime = fit_runtime_class(points);
      const auto estimate = fractal_dimension(rule, probe);
      std::cout << std::fixed << std::setprecision(4);
      for (const auto& p : estimate.per_input) {
        std::cout << "input " << p.input << ": height " << p.height << ", slope " << p.slope << '\n';
      }
      std::cout << "runtime " << runtime.label() << " (log fit " << runtime.log_fit_quality << "), dimension "
                << estimate.extrapolated << " " << to_string(estimate.trend)
                << (estimate.degenerate ? " (degenerate)" : "") << '\n';
      return 0;
    }

    if (report_cmd->parsed()) {
      const auto format = io::parse_table_format(table_format);
      const auto catalog = load_catalog(dir);
      const auto report = correspondence_report(catalog, std::max(common.budget, catalog.probe.budget), {},
                                                common.jobs);
      emit(io::export_correspondence(report, format), out_path);
      std::cerr << "linear " << report.linear_agree << "/" << report.linear_total << ", exponential "
                << report.exponential_agree << "/" << report.exponential_total << '\n';
      return 0;
    }

    if (compare_cmd->parsed()) {
      const auto format = io::parse_table_format(table_format);
      const auto small_store = io::ResultStore::open(small_dir);
      const auto large_store = io::ResultStore::open(large_dir);
      io::require_same_fingerprint(small_store.manifest(), large_store.manifest());
      const auto small = load_catalog(small_dir);
      const auto large = load_catalog(large_dir);
      const auto containment = containment_check(small, large);
      const auto slowdown = slowdown_report(small, large);
      emit(io::export_slowdown(slowdown, format), out_path);
      std::cerr << containment.contained << "/" << containment.small_functions << " functions contained\n";
      return containment.complete() ? 0 : kExitFailure;
    }
  } catch (const io::FingerprintMismatchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const ProbeMismatchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const io::CheckpointError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
