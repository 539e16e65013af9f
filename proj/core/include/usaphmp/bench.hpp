#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "usaphmp/engine.hpp"
#include "usaphmp/evaluation.hpp"
#include "usaphmp/io.hpp"

namespace usaphmp {

/// Shortest decimal text that parses back to `v`.
std::string format_real(double v);

// ---------------------------------------------------------------------------
// Regression manifests

struct ManifestRow {
  std::string label;
  std::filesystem::path instance;
  InstanceFormat format = InstanceFormat::kCanonical;
  std::optional<std::size_t> hubs;  ///< overrides the file's p
  FitnessMode mode = FitnessMode::kStandardMilli;
  std::optional<double> known_best;
};

struct BenchmarkManifest {
  std::vector<ManifestRow> rows;
};

/// CSV with header `label,instance,format,p,mode,known_best`. `format`, `p`
/// and `known_best` may be empty (format then follows the file extension).
/// Relative instance paths resolve against `base_dir`. '#' lines are
/// comments. Throws ParseError.
BenchmarkManifest parse_manifest(std::istream& in,
                                 const std::filesystem::path& base_dir = {});
BenchmarkManifest load_manifest(const std::filesystem::path& path);

inline constexpr std::string_view kBenchCsvHeader =
    "label,n,p,mode,seed,achieved,known_best,gap,evaluations,wall_time_s,"
    "params_fingerprint";

struct BenchReportRow {
  std::string label;
  std::size_t n = 0;
  std::size_t p = 0;
  FitnessMode mode = FitnessMode::kRaw;
  std::uint64_t seed = 0;
  double achieved = 0.0;
  std::optional<double> known_best;
  std::optional<double> gap;
  std::uint64_t evaluations = 0;
  double wall_time_s = 0.0;
  std::string params_fingerprint;
};

/// (achieved - known_best) / known_best.
double relative_gap(double achieved, double known_best);

BenchReportRow make_report_row(std::string label, const Instance& inst,
                               const GaParams& params, const SolveReport& report,
                               std::optional<double> known_best);

/// One CSV line (no newline). With `include_timing` false the wall time
/// field is left empty so rows can be diffed across runs.
std::string format_bench_row(const BenchReportRow& row,
                             bool include_timing = true);

struct BenchConfig {
  GaParams params;
  std::vector<std::uint64_t> seeds{1};
  /// Rows whose gap exceeds this fail the run.
  double gap_threshold = 1e-4;
  /// Gaps below -tolerance mean the known best is wrong (or units differ).
  double negative_gap_tolerance = 1e-6;
  SolveOptions options;
};

struct RowSummary {
  std::string label;
  std::size_t runs = 0;
  std::optional<double> best;
  std::optional<double> best_gap;
  std::optional<double> mean_gap;
  bool gap_exceeded = false;
  bool negative_gap = false;
  std::string error;  ///< nonempty when the row could not run
};

struct BenchOutcome {
  std::vector<BenchReportRow> rows;
  std::vector<RowSummary> summaries;

  bool any_error() const;
  bool any_negative_gap() const;
  bool any_gap_exceeded() const;
  /// 0 clean, 2 load error or negative-gap alarm, 3 gap threshold exceeded.
  int exit_code() const;
};

/// Solves every manifest row once per seed, in manifest order. Load and
/// solve failures are recorded in the row summary and the run continues.
/// Progress and alarms are written to `log` when given.
BenchOutcome run_bench(const BenchmarkManifest& manifest,
                       const BenchConfig& config, std::ostream* log = nullptr);

// ---------------------------------------------------------------------------
// Single solves

inline constexpr std::string_view kSolveCsvHeader =
    "label,n,p,mode,seed,achieved,raw_objective,evaluations,hubs,trace,"
    "wall_time_s,params_fingerprint";

/// Hubs are 1-based and space separated; trace entries are ';' separated.
std::string format_solve_row(std::string_view label, const Instance& inst,
                             const GaParams& params, const SolveReport& report,
                             bool include_timing = true);

// ---------------------------------------------------------------------------
// Cost-factor sweeps

struct SweepPoint {
  double collection = 1.0;
  double distribution = 1.0;
  double transfer = 1.0;
};

struct SweepRow {
  SweepPoint point;
  double fitness = 0.0;
  std::optional<double> avg_interhub_distance;  ///< empty when p = 1
  Solution solution;
};

/// Cartesian product of (chi, delta) pairs and alpha values, chi/delta
/// outermost. An empty list falls back to the instance's own factors.
std::vector<SweepPoint> sweep_grid(
    const Instance& inst,
    std::span<const std::pair<double, double>> collection_distribution,
    std::span<const double> transfer);

/// Solves each grid point with the same params and seed.
std::vector<SweepRow> run_sweep(const Instance& inst,
                                std::span<const SweepPoint> grid,
                                const GaParams& params, FitnessMode mode,
                                const SolveOptions& options = {});

inline constexpr std::string_view kSweepCsvHeader =
    "chi,delta,alpha,fitness,avg_interhub_distance";

std::string format_sweep_row(const SweepRow& row);

}  // namespace usaphmp
