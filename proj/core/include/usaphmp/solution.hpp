#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "usaphmp/instance.hpp"

namespace usaphmp {

/// Hub indicator array: mask[i] != 0 iff node i is a hub.
using HubMask = std::vector<std::uint8_t>;

/// A single-allocation solution: hub indicators plus the hub each node is
/// routed through. Node indices are 0-based.
struct Solution {
  HubMask hub;
  std::vector<std::size_t> alloc;

  std::size_t size() const noexcept { return hub.size(); }
  /// Hub nodes in ascending order.
  std::vector<std::size_t> hub_nodes() const;

  friend bool operator==(const Solution&, const Solution&) = default;
};

enum class ViolationKind {
  kHubCount,            ///< number of hubs differs from p
  kAllocatedToNonHub,   ///< alloc[i] is not a hub
  kHubNotSelfAllocated  ///< hub k with alloc[k] != k
};

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> node;  ///< 0-based node involved, if any
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  explicit operator bool() const noexcept { return ok(); }
  /// One violation per line.
  std::string describe() const;
};

/// Checks a solution against the single-allocation constraints. Throws
/// StructuralError if the arrays do not have length n or an allocation index
/// is out of range; constraint violations are reported, not thrown.
ValidationResult validate(const Solution& sol, const Instance& inst);

/// Throws InfeasibleSolution (or StructuralError) unless `sol` validates.
void require_feasible(const Solution& sol, const Instance& inst);

/// Allocates every node to its nearest hub in `hub_set` (ties to the lowest
/// index); hubs are allocated to themselves. Throws ParameterError unless
/// `hub_set` holds exactly p distinct valid nodes.
Solution nearest_allocation(std::span<const std::size_t> hub_set,
                            const Instance& inst);
Solution nearest_allocation(const HubMask& mask, const Instance& inst);

/// The `count` nodes with smallest distance row sum, ascending, ties by index.
std::vector<std::size_t> middle_nodes(const Instance& inst, std::size_t count);

/// p middle nodes as hubs, nearest allocation.
Solution initial_solution(const Instance& inst);

}  // namespace usaphmp
