#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "usaphmp/evaluation.hpp"
#include "usaphmp/instance.hpp"
#include "usaphmp/solution.hpp"

namespace usaphmp {

/// Budget and shape of an island-model GA run.
struct GaParams {
  std::size_t islands = 64;      ///< R, independent subpopulations
  std::size_t pop_size = 64;     ///< n, individuals per island (even)
  std::size_t inner_iters = 50;  ///< N1, generations per island per round
  std::size_t outer_iters = 10;  ///< N2, global rounds
  std::uint64_t seed = 1;
  /// Mutations applied when spawning an individual from the ancestor;
  /// 0 selects min(p, 3).
  std::size_t perturb_strength = 0;
  /// Keep the incumbent when a round's champion does not improve on it, and
  /// seed each island's population with its ancestor. Disabling reproduces
  /// plain ancestor replacement: every round's champion wins.
  bool elitism = true;

  /// Throws ParameterError if a count is zero, pop_size is odd, or the
  /// resolved strength is outside [1, p].
  void validate(const Instance& inst) const;
  std::size_t resolved_strength(const Instance& inst) const;
  /// 16 hex digits identifying every field except the seed.
  std::string fingerprint() const;
};

/// Called once per evaluated individual, possibly from several threads.
using AuditHook = std::function<void(const Solution&, double raw)>;

struct SolveOptions {
  /// Threads running islands; 0 uses the hardware concurrency. Never
  /// affects results.
  unsigned workers = 0;
  AuditHook audit;
  /// Polled between generations; when set the run stops and returns the
  /// best solution found so far.
  const std::atomic<bool>* stop = nullptr;
};

struct SolveReport {
  Solution best_solution;
  double raw_objective = 0.0;
  double scaled_fitness = 0.0;
  FitnessMode mode = FitnessMode::kRaw;
  /// Incumbent fitness after each outer round.
  std::vector<double> trace;
  /// Individuals evaluated by the GA (R * N2 * N1 * n for a full run).
  std::uint64_t evaluations = 0;
  double wall_time_s = 0.0;
  bool interrupted = false;
};

/// Island-model GA. Each outer round every island starts from the current
/// ancestor, evolves N1 generations (perturbed population, pairwise
/// crossover, mutation, correction, evaluation, best child becomes the
/// island ancestor) and reports its champion; the best champion (lowest
/// island index on ties) seeds the next round. Results depend only on
/// (inst, params, mode).
SolveReport solve(const Instance& inst, const GaParams& params,
                  FitnessMode mode, const SolveOptions& options = {});

}  // namespace usaphmp
