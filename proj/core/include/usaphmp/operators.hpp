#pragma once

#include <cstddef>

#include "usaphmp/instance.hpp"
#include "usaphmp/rng.hpp"
#include "usaphmp/solution.hpp"

namespace usaphmp {

/// Offspring hub masks of a crossover. Hub counts may differ from p until
/// passed through correction().
struct CrossoverChildren {
  HubMask first;
  HubMask second;
};

/// Single-point crossover at `cut`: first = a[0, cut) ++ b[cut, n),
/// second = b[0, cut) ++ a[cut, n). Throws StructuralError on length
/// mismatch or cut > n.
CrossoverChildren crossover_at(const HubMask& a, const HubMask& b,
                               std::size_t cut);

/// Uniform cut point in [1, n - 1]; 0 when n < 2 (nothing to cut).
std::size_t draw_cut_point(std::size_t n, RngStream& rng);

/// Single-point crossover on the hub arrays of two parents with a random
/// cut. Allocations are not crossed; they are rebuilt by correction().
CrossoverChildren crossover(const Solution& a, const Solution& b,
                            RngStream& rng);

/// Closes one uniformly chosen hub and opens one uniformly chosen non-hub.
/// No-op (and no draws) when the mask is all hubs or has no hub.
void swap_hub(HubMask& mask, RngStream& rng);

/// Repairs any mask into a feasible solution with exactly p hubs.
///
/// Surplus hubs are closed one at a time, smallest allocated flow first
/// (sum of O_i + D_i over the nodes currently routed through the hub, ties
/// to the lowest index), with the closed hub's nodes moving to their nearest
/// remaining hub. Missing hubs are opened in middle-node order. The result
/// uses nearest allocation. Throws StructuralError on a length mismatch.
Solution correction(const HubMask& raw, const Instance& inst);

/// Hub/non-hub swap followed by nearest allocation. Identity when p = n.
Solution mutation(const Solution& sol, const Instance& inst, RngStream& rng);

/// `strength` successive mutations of `ancestor`. Throws ParameterError
/// unless 1 <= strength <= p.
Solution perturb(const Solution& ancestor, const Instance& inst,
                 RngStream& rng, std::size_t strength);

}  // namespace usaphmp
