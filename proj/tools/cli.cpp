#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "usaphmp/usaphmp.hpp"

namespace usaphmp::cli {

namespace {

std::atomic<bool> g_stop{false};

// Thrown for conditions that mean the library broke its own contract.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  GaParams params;
  std::string fitness_mode = "milli";
  std::string format;
  std::string csv;
  std::size_t hubs = 0;
  unsigned workers = 0;
  bool no_elitism = false;
  bool no_timing = false;
};

void add_instance_options(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--format", o.format, "Instance format (default: from extension)")
      ->check(CLI::IsMember({"canonical", "coordinate"}));
  cmd.add_option("-p,--hubs", o.hubs, "Override the hub count in the file");
  cmd.add_option("--fitness-mode", o.fitness_mode, "Fitness scaling")
      ->check(CLI::IsMember({"cab", "milli", "raw"}))
      ->capture_default_str();
}

void add_ga_options(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--seed", o.params.seed, "Master seed")->capture_default_str();
  cmd.add_option("--islands", o.params.islands, "Islands (R)")->capture_default_str();
  cmd.add_option("--pop", o.params.pop_size, "Population per island (even)")
      ->capture_default_str();
  cmd.add_option("--inner", o.params.inner_iters, "Generations per round (N1)")
      ->capture_default_str();
  cmd.add_option("--outer", o.params.outer_iters, "Global rounds (N2)")
      ->capture_default_str();
  cmd.add_option("--perturb", o.params.perturb_strength,
                 "Mutations per spawned individual (0 = min(p, 3))")
      ->capture_default_str();
  cmd.add_option("--workers", o.workers, "Worker threads (0 = all cores)");
  cmd.add_flag("--no-elitism", o.no_elitism,
               "Replace the ancestor unconditionally (no elitism)");
}

Instance load(const std::string& path, const CommonOptions& o) {
  std::optional<InstanceFormat> format;
  if (!o.format.empty()) format = parse_format(o.format);
  auto inst = load_instance(path, format);
  if (o.hubs) inst = inst.with_hubs(o.hubs);
  return inst;
}

GaParams resolved_params(const CommonOptions& o) {
  GaParams p = o.params;
  p.elitism = !o.no_elitism;
  return p;
}

SolveOptions solve_options(const CommonOptions& o) {
  SolveOptions s;
  s.workers = o.workers;
  s.stop = &g_stop;
  return s;
}

// Writes to `path`, or to `out` when path is "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  file << text;
  if (!file) throw Error("write failed for " + path);
}

std::string hub_list(const Solution& sol) {
  std::string s;
  for (std::size_t k : sol.hub_nodes()) s += (s.empty() ? "" : " ") + std::to_string(k + 1);
  return s;
}

void check_report(const Instance& inst, const GaParams& params,
                  const SolveReport& report) {
  if (!validate(report.best_solution, inst).ok()) {
    throw InvariantViolation("solver returned an infeasible solution");
  }
  if (report.best_solution != nearest_allocation(report.best_solution.hub, inst)) {
    throw InvariantViolation("solver returned a non-nearest allocation");
  }
  if (params.elitism) {
    for (std::size_t t = 1; t < report.trace.size(); ++t) {
      if (report.trace[t] > report.trace[t - 1]) {
        throw InvariantViolation("incumbent trace increased");
      }
    }
  }
}

int cmd_solve(const std::string& path, const CommonOptions& o,
              const std::string& label_opt, const std::string& solution_out,
              std::ostream& out, std::ostream& err) {
  const auto inst = load(path, o);
  const auto params = resolved_params(o);
  const auto mode = parse_fitness_mode(o.fitness_mode);
  const auto report = solve(inst, params, mode, solve_options(o));
  check_report(inst, params, report);
  const std::string label = label_opt.empty() ? inst.name() : label_opt;

  if (o.csv != "-") {
    const auto width = std::setw(13);
    out << std::left;
    out << width << "instance" << label << '\n';
    out << width << "nodes" << inst.size() << '\n';
    out << width << "hubs" << hub_list(report.best_solution) << '\n';
    out << width << "fitness" << format_real(report.scaled_fitness) << " ("
        << fitness_mode_name(mode) << ")\n";
    out << width << "raw" << format_real(report.raw_objective) << '\n';
    out << width << "evaluations" << report.evaluations << '\n';
    out << width << "seed" << params.seed << '\n';
    out << width << "params" << params.fingerprint() << '\n';
    out << width << "wall time" << format_real(report.wall_time_s) << " s\n";
    out << width << "trace";
    for (std::size_t t = 0; t < report.trace.size(); ++t) {
      out << (t ? " " : "") << format_real(report.trace[t]);
    }
    out << '\n';
  }
  if (!o.csv.empty()) {
    emit(o.csv,
         std::string(kSolveCsvHeader) + '\n' +
             format_solve_row(label, inst, params, report, !o.no_timing) + '\n',
         out);
  }
  if (!solution_out.empty()) {
    emit(solution_out, serialize_solution(report.best_solution), out);
  }
  if (report.interrupted) err << "interrupted: reporting best solution so far\n";
  return kSuccess;
}

int cmd_eval(const std::string& inst_path, const std::string& sol_path,
             const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto inst = load(inst_path, o);
  std::ifstream in(sol_path);
  if (!in) throw Error("cannot open " + sol_path);
  const auto sol = parse_solution(in);
  const auto result = validate(sol, inst);
  if (!result.ok()) {
    err << "infeasible solution:\n" << result.describe();
    return kDataError;
  }
  const auto mode = parse_fitness_mode(o.fitness_mode);
  const auto cost = objective(inst, sol, mode);
  out << "feasible yes\n";
  out << "hubs " << hub_list(sol) << '\n';
  out << "collection_cost " << format_real(cost.collection_cost) << '\n';
  out << "transfer_cost " << format_real(cost.transfer_cost) << '\n';
  out << "distribution_cost " << format_real(cost.distribution_cost) << '\n';
  out << "raw_total " << format_real(cost.raw_total) << '\n';
  out << "fitness " << format_real(cost.scaled_fitness) << '\n';
  out << "mode " << fitness_mode_name(mode) << '\n';
  return kSuccess;
}

int cmd_gen(std::size_t n, std::size_t p, std::uint64_t seed,
            const CostFactors& factors, const std::string& output,
            std::ostream& out) {
  const auto inst = generate_urand(n, p, seed, factors);
  const auto text = serialize_instance(inst);
  emit(output, text, out);
  if (output != "-") out << "fnv1a64 " << fnv1a_hex(text) << "  " << output << '\n';
  return kSuccess;
}

int cmd_oracle(const std::string& path, const CommonOptions& o, bool exact,
               std::uint64_t limit, std::ostream& out) {
  const auto inst = load(path, o);
  const auto mode = parse_fitness_mode(o.fitness_mode);
  const auto result = exact ? exact_optimum(inst, limit) : restricted_optimum(inst, limit);
  out << "method " << (exact ? "exact" : "restricted") << '\n';
  out << "candidates " << result.candidates << '\n';
  out << "hubs " << hub_list(result.solution) << '\n';
  out << "raw " << format_real(result.raw_objective) << '\n';
  out << "fitness " << format_real(scale_fitness(inst, result.raw_objective, mode))
      << '\n';
  out << "mode " << fitness_mode_name(mode) << '\n';
  return kSuccess;
}

int cmd_bench(const std::string& manifest_path, const CommonOptions& o,
              const std::vector<std::uint64_t>& seeds, double gap_threshold,
              std::ostream& out, std::ostream& err) {
  const auto manifest = load_manifest(manifest_path);
  BenchConfig config;
  config.params = resolved_params(o);
  config.seeds = seeds;
  config.gap_threshold = gap_threshold;
  config.options = solve_options(o);
  const auto outcome = run_bench(manifest, config, &err);

  std::string csv = std::string(kBenchCsvHeader) + '\n';
  for (const auto& row : outcome.rows) {
    csv += format_bench_row(row, !o.no_timing) + '\n';
  }
  if (o.csv == "-") {
    out << csv;
  } else {
    for (const auto& row : outcome.rows) {
      out << std::left << std::setw(16) << row.label << " seed " << std::setw(6)
          << row.seed << " achieved " << std::setw(16) << format_real(row.achieved)
          << " gap " << (row.gap ? format_real(*row.gap) : "-") << '\n';
    }
    for (const auto& s : outcome.summaries) {
      out << "summary " << s.label;
      if (!s.error.empty()) {
        out << " FAILED: " << s.error << '\n';
        continue;
      }
      out << " runs " << s.runs << " best "
          << (s.best ? format_real(*s.best) : "-") << " best_gap "
          << (s.best_gap ? format_real(*s.best_gap) : "-") << " mean_gap "
          << (s.mean_gap ? format_real(*s.mean_gap) : "-");
      if (s.negative_gap) out << " NEGATIVE-GAP";
      if (s.gap_exceeded) out << " GAP-EXCEEDED";
      out << '\n';
    }
    if (!o.csv.empty()) emit(o.csv, csv, out);
  }
  return outcome.exit_code();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    values.push_back(std::stod(item, &used));
    if (used != item.size()) throw ParameterError("bad number '" + item + "'");
  }
  return values;
}

std::vector<std::pair<double, double>> parse_pairs(const std::string& text) {
  std::vector<std::pair<double, double>> pairs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ParameterError("expected chi:delta, got '" + item + "'");
    }
    const auto a = parse_list(item.substr(0, colon));
    const auto b = parse_list(item.substr(colon + 1));
    if (a.size() != 1 || b.size() != 1) throw ParameterError("bad pair '" + item + "'");
    pairs.emplace_back(a[0], b[0]);
  }
  return pairs;
}

int cmd_sweep(const std::string& path, const CommonOptions& o,
              const std::string& chi_delta, const std::string& alphas,
              std::ostream& out) {
  const auto inst = load(path, o);
  const auto pairs = parse_pairs(chi_delta);
  const auto alpha_values = parse_list(alphas);
  const auto grid = sweep_grid(inst, pairs, alpha_values);
  const auto rows = run_sweep(inst, grid, resolved_params(o),
                              parse_fitness_mode(o.fitness_mode), solve_options(o));
  std::string csv = std::string(kSweepCsvHeader) + '\n';
  for (const auto& row : rows) csv += format_sweep_row(row) + '\n';
  emit(o.csv.empty() ? "-" : o.csv, csv, out);
  return kSuccess;
}

}  // namespace

void request_stop() noexcept { g_stop.store(true); }

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Single-allocation p-hub median solver"};
  app.require_subcommand(1);

  CommonOptions o;
  std::string instance_path, solution_path, label, solution_out;

  auto* solve_cmd = app.add_subcommand("solve", "Run the island-model GA on an instance");
  solve_cmd->add_option("instance", instance_path, "Instance file")->required();
  add_instance_options(*solve_cmd, o);
  add_ga_options(*solve_cmd, o);
  solve_cmd->add_option("--csv", o.csv, "Write a CSV row to this path ('-' = stdout)");
  solve_cmd->add_flag("--no-timing", o.no_timing, "Leave wall time out of CSV rows");
  solve_cmd->add_option("--label", label, "Row label (default: file stem)");
  solve_cmd->add_option("--write-solution", solution_out, "Write the best solution file");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a solution file");
  eval_cmd->add_option("instance", instance_path, "Instance file")->required();
  eval_cmd->add_option("solution", solution_path, "Solution file")->required();
  add_instance_options(*eval_cmd, o);

  std::size_t gen_n = 0, gen_p = 0;
  std::uint64_t gen_seed = 1;
  CostFactors gen_factors;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a uniform random Euclidean instance");
  gen_cmd->add_option("-n,--nodes", gen_n, "Node count")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("-p,--hubs", gen_p, "Hub count")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--alpha", gen_factors.transfer, "Inter-hub discount")->required();
  gen_cmd->add_option("--chi", gen_factors.collection, "Collection factor")->capture_default_str();
  gen_cmd->add_option("--delta", gen_factors.distribution, "Distribution factor")
      ->capture_default_str();
  gen_cmd->add_option("-o,--output", gen_out, "Output path ('-' = stdout)")->required();

  bool exact = false;
  std::uint64_t limit = kDefaultEnumerationLimit;
  auto* oracle_cmd = app.add_subcommand("oracle", "Solve a small instance by enumeration");
  oracle_cmd->add_option("instance", instance_path, "Instance file")->required();
  add_instance_options(*oracle_cmd, o);
  oracle_cmd->add_flag("--exact", exact, "Enumerate allocations too (default: nearest only)");
  oracle_cmd->add_option("--limit", limit, "Maximum candidates")->capture_default_str();

  std::string manifest_path;
  std::vector<std::uint64_t> seeds{1};
  double gap_threshold = 1e-4;
  auto* bench_cmd = app.add_subcommand("bench", "Run a regression manifest");
  bench_cmd->add_option("manifest", manifest_path, "Manifest CSV")->required();
  add_ga_options(*bench_cmd, o);
  bench_cmd->add_option("--seeds", seeds, "Seeds, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--csv", o.csv, "Write report CSV to this path ('-' = stdout)");
  bench_cmd->add_option("--gap-threshold", gap_threshold, "Maximum relative gap")
      ->capture_default_str();
  bench_cmd->add_flag("--no-timing", o.no_timing, "Leave wall time out of CSV rows");

  std::string chi_delta, alphas;
  auto* sweep_cmd = app.add_subcommand("sweep", "Solve over a grid of cost factors");
  sweep_cmd->add_option("instance", instance_path, "Instance file")->required();
  add_instance_options(*sweep_cmd, o);
  add_ga_options(*sweep_cmd, o);
  sweep_cmd->add_option("--chi-delta", chi_delta, "chi:delta pairs, comma separated");
  sweep_cmd->add_option("--alpha", alphas, "alpha values, comma separated");
  sweep_cmd->add_option("--csv", o.csv, "Output CSV path (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(instance_path, o, label, solution_out, out, err);
    if (*eval_cmd) return cmd_eval(instance_path, solution_path, o, out, err);
    if (*gen_cmd) return cmd_gen(gen_n, gen_p, gen_seed, gen_factors, gen_out, out);
    if (*oracle_cmd) return cmd_oracle(instance_path, o, exact, limit, out);
    if (*bench_cmd) return cmd_bench(manifest_path, o, seeds, gap_threshold, out, err);
    if (*sweep_cmd) return cmd_sweep(instance_path, o, chi_delta, alphas, out);
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariantViolation;
  }
  return kUsage;
}

}  // namespace usaphmp::cli
