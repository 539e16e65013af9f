#pragma once

#include <string_view>

#include "usaphmp/instance.hpp"
#include "usaphmp/solution.hpp"

namespace usaphmp {

/// How a raw objective value is reported for a benchmark family.
enum class FitnessMode {
  kCabNormalized,  ///< raw / total flow (CAB)
  kStandardMilli,  ///< raw * 1e-3 (AP, Urand)
  kRaw,            ///< raw (PlanetLab)
};

/// "cab" / "milli" / "raw"; throws ParameterError otherwise.
FitnessMode parse_fitness_mode(std::string_view name);
std::string_view fitness_mode_name(FitnessMode mode);

/// Cost of a solution split by path leg.
struct CostBreakdown {
  double collection_cost = 0.0;    ///< chi * sum_i O_i d(i, S(i))
  double transfer_cost = 0.0;      ///< alpha * sum_ij W_ij d(S(i), S(j))
  double distribution_cost = 0.0;  ///< delta * sum_j D_j d(j, S(j))
  double raw_total = 0.0;
  double scaled_fitness = 0.0;     ///< raw_total under the requested mode
};

/// Total routed flow cost of a feasible solution. Every unit of W_ij travels
/// i -> S(i) -> S(j) -> j, so no per-origin flow variables are needed.
/// Throws InfeasibleSolution / StructuralError instead of evaluating an
/// invalid solution.
CostBreakdown objective(const Instance& inst, const Solution& sol,
                        FitnessMode mode = FitnessMode::kRaw);

/// Scales a raw objective. Throws DegenerateInstance for kCabNormalized on
/// an instance with zero total flow.
double scale_fitness(const Instance& inst, double raw, FitnessMode mode);

double fitness(const Instance& inst, const Solution& sol, FitnessMode mode);

/// Mean of dist(k, l) over ordered hub pairs k != l. Throws
/// DegenerateInstance when fewer than two hubs are open.
double avg_interhub_distance(const Instance& inst, const Solution& sol);

}  // namespace usaphmp
