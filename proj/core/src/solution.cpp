#include "usaphmp/solution.hpp"

#include <algorithm>

#include "allocation.hpp"
#include "usaphmp/error.hpp"

namespace usaphmp {

std::vector<std::size_t> Solution::hub_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < hub.size(); ++i) {
    if (hub[i]) out.push_back(i);
  }
  return out;
}

std::string ValidationResult::describe() const {
  std::string out;
  for (const auto& v : violations) {
    out += v.message;
    out += '\n';
  }
  return out;
}

ValidationResult validate(const Solution& sol, const Instance& inst) {
  const std::size_t n = inst.size();
  if (sol.hub.size() != n || sol.alloc.size() != n) {
    throw StructuralError("solution arrays have length " +
                          std::to_string(sol.hub.size()) + "/" +
                          std::to_string(sol.alloc.size()) +
                          ", instance has " + std::to_string(n) + " nodes");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sol.alloc[i] >= n) {
      throw StructuralError("node " + std::to_string(i + 1) +
                            " allocated to out-of-range index " +
                            std::to_string(sol.alloc[i] + 1));
    }
  }

  ValidationResult result;
  const auto count = static_cast<std::size_t>(
      std::count_if(sol.hub.begin(), sol.hub.end(), [](auto h) { return h != 0; }));
  if (count != inst.hubs()) {
    result.violations.push_back(
        {ViolationKind::kHubCount, std::nullopt,
         "solution opens " + std::to_string(count) + " hubs, p = " +
             std::to_string(inst.hubs())});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!sol.hub[sol.alloc[i]]) {
      result.violations.push_back(
          {ViolationKind::kAllocatedToNonHub, i,
           "node " + std::to_string(i + 1) + " allocated to non-hub " +
               std::to_string(sol.alloc[i] + 1)});
    }
    if (sol.hub[i] && sol.alloc[i] != i) {
      result.violations.push_back(
          {ViolationKind::kHubNotSelfAllocated, i,
           "hub " + std::to_string(i + 1) + " allocated to " +
               std::to_string(sol.alloc[i] + 1)});
    }
  }
  return result;
}

void require_feasible(const Solution& sol, const Instance& inst) {
  const auto result = validate(sol, inst);
  if (!result.ok()) throw InfeasibleSolution(result.describe());
}

namespace detail {

void assign_nearest(std::span<const std::size_t> sorted_hubs,
                    const Instance& inst, std::vector<std::size_t>& alloc) {
  const std::size_t n = inst.size();
  alloc.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = inst.dist().row(i);
    std::size_t best = sorted_hubs.front();
    double best_d = row[best];
    for (std::size_t k : sorted_hubs.subspan(1)) {
      if (row[k] < best_d) {
        best_d = row[k];
        best = k;
      }
    }
    alloc[i] = best;
  }
  for (std::size_t k : sorted_hubs) alloc[k] = k;
}

}  // namespace detail

Solution nearest_allocation(const HubMask& mask, const Instance& inst) {
  if (mask.size() != inst.size()) {
    throw StructuralError("hub mask length " + std::to_string(mask.size()) +
                          " != " + std::to_string(inst.size()));
  }
  Solution sol;
  sol.hub = mask;
  for (auto& h : sol.hub) h = h ? 1 : 0;
  const auto hubs = sol.hub_nodes();
  if (hubs.size() != inst.hubs()) {
    throw ParameterError("hub set has " + std::to_string(hubs.size()) +
                         " nodes, p = " + std::to_string(inst.hubs()));
  }
  detail::assign_nearest(hubs, inst, sol.alloc);
  return sol;
}

Solution nearest_allocation(std::span<const std::size_t> hub_set,
                            const Instance& inst) {
  if (hub_set.empty()) throw ParameterError("hub set is empty");
  HubMask mask(inst.size(), 0);
  for (std::size_t k : hub_set) {
    if (k >= inst.size()) {
      throw ParameterError("hub index " + std::to_string(k + 1) +
                           " out of range");
    }
    if (mask[k]) {
      throw ParameterError("hub " + std::to_string(k + 1) + " listed twice");
    }
    mask[k] = 1;
  }
  return nearest_allocation(mask, inst);
}

std::vector<std::size_t> middle_nodes(const Instance& inst, std::size_t count) {
  if (count < 1 || count > inst.size()) {
    throw ParameterError("middle node count " + std::to_string(count) +
                         " outside [1, " + std::to_string(inst.size()) + "]");
  }
  const auto order = inst.centrality_order();
  return {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count)};
}

Solution initial_solution(const Instance& inst) {
  const auto hubs = middle_nodes(inst, inst.hubs());
  return nearest_allocation(hubs, inst);
}

}  // namespace usaphmp
