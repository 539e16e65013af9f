#include "usaphmp/bench.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "usaphmp/error.hpp"

namespace usaphmp {

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, ptr};
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    auto field = line.substr(start, comma == std::string::npos ? std::string::npos
                                                               : comma - start);
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_number(const std::string& tok, std::size_t line, const char* what) {
  T v{};
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, std::string("invalid ") + what + " '" + tok + "'");
  }
  return v;
}

constexpr std::string_view kManifestHeader = "label,instance,format,p,mode,known_best";

}  // namespace

BenchmarkManifest parse_manifest(std::istream& in,
                                 const std::filesystem::path& base_dir) {
  BenchmarkManifest manifest;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto fields = split_csv(line);
    if (!have_header) {
      std::string joined;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        joined += (i ? "," : "") + fields[i];
      }
      if (joined != kManifestHeader) {
        throw ParseError(line_no, "expected header '" + std::string(kManifestHeader) + "'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 6) {
      throw ParseError(line_no, "expected 6 fields, found " + std::to_string(fields.size()));
    }
    ManifestRow row;
    row.label = fields[0];
    if (row.label.empty()) throw ParseError(line_no, "empty label");
    if (fields[1].empty()) throw ParseError(line_no, "empty instance path");
    row.instance = fields[1];
    if (row.instance.is_relative() && !base_dir.empty()) {
      row.instance = base_dir / row.instance;
    }
    try {
      row.format = fields[2].empty() ? format_for_path(row.instance)
                                     : parse_format(fields[2]);
      row.mode = parse_fitness_mode(fields[4]);
    } catch (const ParameterError& e) {
      throw ParseError(line_no, e.what());
    }
    if (!fields[3].empty()) {
      row.hubs = parse_number<std::size_t>(fields[3], line_no, "hub count");
    }
    if (!fields[5].empty()) {
      const double kb = parse_number<double>(fields[5], line_no, "known best");
      if (!(kb > 0.0)) throw ParseError(line_no, "known best must be positive");
      row.known_best = kb;
    }
    manifest.rows.push_back(std::move(row));
  }
  if (!have_header && line_no > 0) {
    throw ParseError(0, "manifest has no header");
  }
  return manifest;
}

BenchmarkManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_manifest(in, path.parent_path());
}

double relative_gap(double achieved, double known_best) {
  return (achieved - known_best) / known_best;
}

BenchReportRow make_report_row(std::string label, const Instance& inst,
                               const GaParams& params, const SolveReport& report,
                               std::optional<double> known_best) {
  BenchReportRow row;
  row.label = std::move(label);
  row.n = inst.size();
  row.p = inst.hubs();
  row.mode = report.mode;
  row.seed = params.seed;
  row.achieved = report.scaled_fitness;
  row.known_best = known_best;
  if (known_best) row.gap = relative_gap(row.achieved, *known_best);
  row.evaluations = report.evaluations;
  row.wall_time_s = report.wall_time_s;
  row.params_fingerprint = params.fingerprint();
  return row;
}

std::string format_bench_row(const BenchReportRow& row, bool include_timing) {
  std::string out = row.label;
  out += ',' + std::to_string(row.n);
  out += ',' + std::to_string(row.p);
  out += ',' + std::string(fitness_mode_name(row.mode));
  out += ',' + std::to_string(row.seed);
  out += ',' + format_real(row.achieved);
  out += ',' + (row.known_best ? format_real(*row.known_best) : std::string());
  out += ',' + (row.gap ? format_real(*row.gap) : std::string());
  out += ',' + std::to_string(row.evaluations);
  out += ',' + (include_timing ? format_real(row.wall_time_s) : std::string());
  out += ',' + row.params_fingerprint;
  return out;
}

bool BenchOutcome::any_error() const {
  return std::any_of(summaries.begin(), summaries.end(),
                     [](const RowSummary& s) { return !s.error.empty(); });
}

bool BenchOutcome::any_negative_gap() const {
  return std::any_of(summaries.begin(), summaries.end(),
                     [](const RowSummary& s) { return s.negative_gap; });
}

bool BenchOutcome::any_gap_exceeded() const {
  return std::any_of(summaries.begin(), summaries.end(),
                     [](const RowSummary& s) { return s.gap_exceeded; });
}

int BenchOutcome::exit_code() const {
  if (any_error() || any_negative_gap()) return 2;
  if (any_gap_exceeded()) return 3;
  return 0;
}

BenchOutcome run_bench(const BenchmarkManifest& manifest,
                       const BenchConfig& config, std::ostream* log) {
  BenchOutcome outcome;
  for (const auto& entry : manifest.rows) {
    RowSummary summary;
    summary.label = entry.label;
    try {
      auto inst = load_instance(entry.instance, entry.format);
      if (entry.hubs) inst = inst.with_hubs(*entry.hubs);
      double gap_sum = 0.0;
      for (std::uint64_t seed : config.seeds) {
        GaParams params = config.params;
        params.seed = seed;
        const auto report = solve(inst, params, entry.mode, config.options);
        auto row = make_report_row(entry.label, inst, params, report, entry.known_best);
        ++summary.runs;
        if (!summary.best || row.achieved < *summary.best) summary.best = row.achieved;
        if (row.gap) {
          gap_sum += *row.gap;
          if (*row.gap < -config.negative_gap_tolerance) {
            summary.negative_gap = true;
            if (log) {
              *log << "ALARM " << entry.label << " seed " << seed
                   << ": achieved " << format_real(row.achieved)
                   << " is below known best " << format_real(*entry.known_best)
                   << " (gap " << format_real(*row.gap)
                   << "); check units or the known value\n";
            }
          }
        }
        outcome.rows.push_back(std::move(row));
      }
      if (entry.known_best && summary.runs > 0) {
        summary.best_gap = relative_gap(*summary.best, *entry.known_best);
        summary.mean_gap = gap_sum / static_cast<double>(summary.runs);
        summary.gap_exceeded = *summary.best_gap > config.gap_threshold;
      }
    } catch (const std::exception& e) {
      summary.error = e.what();
      if (log) *log << "ERROR " << entry.label << ": " << e.what() << '\n';
    }
    outcome.summaries.push_back(std::move(summary));
  }
  return outcome;
}

std::string format_solve_row(std::string_view label, const Instance& inst,
                             const GaParams& params, const SolveReport& report,
                             bool include_timing) {
  std::string out(label);
  out += ',' + std::to_string(inst.size());
  out += ',' + std::to_string(inst.hubs());
  out += ',' + std::string(fitness_mode_name(report.mode));
  out += ',' + std::to_string(params.seed);
  out += ',' + format_real(report.scaled_fitness);
  out += ',' + format_real(report.raw_objective);
  out += ',' + std::to_string(report.evaluations);
  out += ',';
  const auto hubs = report.best_solution.hub_nodes();
  for (std::size_t i = 0; i < hubs.size(); ++i) {
    out += (i ? " " : "") + std::to_string(hubs[i] + 1);
  }
  out += ',';
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    out += (i ? ";" : "") + format_real(report.trace[i]);
  }
  out += ',' + (include_timing ? format_real(report.wall_time_s) : std::string());
  out += ',' + params.fingerprint();
  return out;
}

std::vector<SweepPoint> sweep_grid(
    const Instance& inst,
    std::span<const std::pair<double, double>> collection_distribution,
    std::span<const double> transfer) {
  const auto& f = inst.factors();
  std::vector<std::pair<double, double>> cd(collection_distribution.begin(),
                                            collection_distribution.end());
  if (cd.empty()) cd.emplace_back(f.collection, f.distribution);
  std::vector<double> alphas(transfer.begin(), transfer.end());
  if (alphas.empty()) alphas.push_back(f.transfer);
  std::vector<SweepPoint> grid;
  for (const auto& [chi, delta] : cd) {
    for (double alpha : alphas) grid.push_back({chi, delta, alpha});
  }
  return grid;
}

std::vector<SweepRow> run_sweep(const Instance& inst,
                                std::span<const SweepPoint> grid,
                                const GaParams& params, FitnessMode mode,
                                const SolveOptions& options) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const auto& point : grid) {
    const auto scaled = inst.with_factors(
        {point.collection, point.transfer, point.distribution});
    auto report = solve(scaled, params, mode, options);
    SweepRow row;
    row.point = point;
    row.fitness = report.scaled_fitness;
    if (scaled.hubs() >= 2) {
      row.avg_interhub_distance = avg_interhub_distance(scaled, report.best_solution);
    }
    row.solution = std::move(report.best_solution);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_sweep_row(const SweepRow& row) {
  return format_real(row.point.collection) + ',' +
         format_real(row.point.distribution) + ',' +
         format_real(row.point.transfer) + ',' + format_real(row.fitness) + ',' +
         (row.avg_interhub_distance ? format_real(*row.avg_interhub_distance)
                                    : std::string());
}

}  // namespace usaphmp
