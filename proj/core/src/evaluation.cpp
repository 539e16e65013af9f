#include "usaphmp/evaluation.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "summation.hpp"
#include "usaphmp/error.hpp"

namespace usaphmp {

FitnessMode parse_fitness_mode(std::string_view name) {
  if (name == "cab") return FitnessMode::kCabNormalized;
  if (name == "milli") return FitnessMode::kStandardMilli;
  if (name == "raw") return FitnessMode::kRaw;
  throw ParameterError("unknown fitness mode '" + std::string(name) + "'");
}

std::string_view fitness_mode_name(FitnessMode mode) {
  switch (mode) {
    case FitnessMode::kCabNormalized: return "cab";
    case FitnessMode::kStandardMilli: return "milli";
    case FitnessMode::kRaw: return "raw";
  }
  return "raw";
}

CostBreakdown objective(const Instance& inst, const Solution& sol,
                        FitnessMode mode) {
  require_feasible(sol, inst);
  const std::size_t n = inst.size();
  const auto out_flow = inst.out_flow();
  const auto in_flow = inst.in_flow();
  const auto& f = inst.factors();

  // Compact hub slots so inter-hub flow aggregates into p bins per origin.
  const auto hubs = sol.hub_nodes();
  std::vector<std::size_t> slot_of_hub(n, 0);
  for (std::size_t s = 0; s < hubs.size(); ++s) slot_of_hub[hubs[s]] = s;
  std::vector<std::size_t> slot(n);
  for (std::size_t j = 0; j < n; ++j) slot[j] = slot_of_hub[sol.alloc[j]];

  detail::CompensatedSum collection, distribution, transfer;
  std::vector<double> bins(hubs.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double leg = inst.dist(i, sol.alloc[i]);
    collection += leg * out_flow[i];
    distribution += leg * in_flow[i];

    std::fill(bins.begin(), bins.end(), 0.0);
    const auto w = inst.flow().row(i);
    for (std::size_t j = 0; j < n; ++j) bins[slot[j]] += w[j];
    const auto hub_row = inst.dist().row(sol.alloc[i]);
    for (std::size_t s = 0; s < hubs.size(); ++s) {
      transfer += bins[s] * hub_row[hubs[s]];
    }
  }

  CostBreakdown out;
  out.collection_cost = f.collection * collection.value();
  out.distribution_cost = f.distribution * distribution.value();
  out.transfer_cost = f.transfer * transfer.value();
  out.raw_total = out.collection_cost + out.transfer_cost + out.distribution_cost;
  out.scaled_fitness = scale_fitness(inst, out.raw_total, mode);
  return out;
}

double scale_fitness(const Instance& inst, double raw, FitnessMode mode) {
  switch (mode) {
    case FitnessMode::kCabNormalized:
      if (inst.total_flow() == 0.0) {
        throw DegenerateInstance("normalized fitness needs nonzero total flow");
      }
      return raw / inst.total_flow();
    case FitnessMode::kStandardMilli:
      return raw * 1e-3;
    case FitnessMode::kRaw:
      return raw;
  }
  return raw;
}

double fitness(const Instance& inst, const Solution& sol, FitnessMode mode) {
  return objective(inst, sol, mode).scaled_fitness;
}

double avg_interhub_distance(const Instance& inst, const Solution& sol) {
  require_feasible(sol, inst);
  const auto hubs = sol.hub_nodes();
  if (hubs.size() < 2) {
    throw DegenerateInstance("inter-hub distance needs at least two hubs");
  }
  detail::CompensatedSum sum;
  for (std::size_t k : hubs) {
    for (std::size_t l : hubs) {
      if (k != l) sum += inst.dist(k, l);
    }
  }
  const double pairs = static_cast<double>(hubs.size() * (hubs.size() - 1));
  return sum.value() / pairs;
}

}  // namespace usaphmp
