#include "usaphmp/engine.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "usaphmp/error.hpp"
#include "usaphmp/io.hpp"
#include "usaphmp/operators.hpp"
#include "usaphmp/rng.hpp"

namespace usaphmp {

void GaParams::validate(const Instance& inst) const {
  if (islands == 0 || pop_size == 0 || inner_iters == 0 || outer_iters == 0) {
    throw ParameterError("islands, population, inner and outer iterations must be positive");
  }
  if (pop_size % 2 != 0) throw ParameterError("population size must be even");
  const std::size_t s = resolved_strength(inst);
  if (s < 1 || s > inst.hubs()) {
    throw ParameterError("perturbation strength " + std::to_string(s) +
                         " outside [1, " + std::to_string(inst.hubs()) + "]");
  }
}

std::size_t GaParams::resolved_strength(const Instance& inst) const {
  return perturb_strength ? perturb_strength
                          : std::min<std::size_t>(inst.hubs(), 3);
}

std::string GaParams::fingerprint() const {
  const std::string text = "R=" + std::to_string(islands) +
                           ";n=" + std::to_string(pop_size) +
                           ";N1=" + std::to_string(inner_iters) +
                           ";N2=" + std::to_string(outer_iters) +
                           ";k=" + std::to_string(perturb_strength) +
                           ";elitism=" + (elitism ? "1" : "0");
  return fnv1a_hex(text);
}

namespace {

struct Candidate {
  Solution sol;
  double raw = 0.0;
};

struct Island {
  RngStream perturbation;
  RngStream variation;
  Candidate champion;
  std::uint64_t evaluations = 0;
};

class RunContext {
 public:
  RunContext(const Instance& inst, const GaParams& params,
             const SolveOptions& options)
      : inst_(inst),
        params_(params),
        options_(options),
        strength_(params.resolved_strength(inst)) {}

  double evaluate(const Solution& sol) const {
    const double raw = objective(inst_, sol).raw_total;
    if (options_.audit) options_.audit(sol, raw);
    return raw;
  }

  bool stopped() const {
    return options_.stop && options_.stop->load(std::memory_order_relaxed);
  }

  // One round of N1 generations starting from `ancestor`.
  void run_island(Island& island, const Candidate& ancestor) const {
    Candidate local = ancestor;
    std::vector<Solution> population(params_.pop_size);
    for (std::size_t gen = 0; gen < params_.inner_iters && !stopped(); ++gen) {
      for (std::size_t j = 0; j < population.size(); ++j) {
        population[j] = (j == 0 && params_.elitism)
                            ? local.sol
                            : perturb(local.sol, inst_, island.perturbation, strength_);
      }
      std::optional<Candidate> best;
      for (std::size_t j = 0; j + 1 < population.size(); j += 2) {
        auto kids = crossover(population[j], population[j + 1], island.variation);
        swap_hub(kids.first, island.variation);
        swap_hub(kids.second, island.variation);
        for (const HubMask* kid : {&kids.first, &kids.second}) {
          Candidate c{correction(*kid, inst_), 0.0};
          c.raw = evaluate(c.sol);
          ++island.evaluations;
          if (!best || c.raw < best->raw) best = std::move(c);
        }
      }
      if (!params_.elitism || best->raw < local.raw) local = std::move(*best);
    }
    island.champion = std::move(local);
  }

  void run_round(std::vector<Island>& islands, const Candidate& ancestor,
                 unsigned workers) const {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < islands.size();) {
        try {
          run_island(islands[i], ancestor);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
  }

 private:
  const Instance& inst_;
  const GaParams& params_;
  const SolveOptions& options_;
  std::size_t strength_;
};

}  // namespace

SolveReport solve(const Instance& inst, const GaParams& params,
                  FitnessMode mode, const SolveOptions& options) {
  params.validate(inst);
  const auto start = std::chrono::steady_clock::now();
  RunContext ctx(inst, params, options);

  Candidate incumbent{initial_solution(inst), 0.0};
  incumbent.raw = objective(inst, incumbent.sol).raw_total;

  std::vector<Island> islands;
  islands.reserve(params.islands);
  for (std::size_t i = 0; i < params.islands; ++i) {
    islands.push_back({resolve_rng(params.seed, i, StreamRole::kPerturbation),
                       resolve_rng(params.seed, i, StreamRole::kVariation),
                       {}, 0});
  }
  unsigned workers = options.workers ? options.workers
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, params.islands));

  SolveReport report;
  report.mode = mode;
  for (std::size_t round = 0; round < params.outer_iters; ++round) {
    if (ctx.stopped()) break;
    ctx.run_round(islands, incumbent, workers);
    const auto champion = std::min_element(
        islands.begin(), islands.end(),
        [](const Island& a, const Island& b) { return a.champion.raw < b.champion.raw; });
    if (!params.elitism || champion->champion.raw < incumbent.raw) {
      incumbent = champion->champion;
    }
    report.trace.push_back(scale_fitness(inst, incumbent.raw, mode));
  }

  report.interrupted = ctx.stopped();
  for (const auto& island : islands) report.evaluations += island.evaluations;
  report.best_solution = std::move(incumbent.sol);
  report.raw_objective = incumbent.raw;
  report.scaled_fitness = scale_fitness(inst, incumbent.raw, mode);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace usaphmp
