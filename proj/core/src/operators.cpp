#include "usaphmp/operators.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "allocation.hpp"
#include "usaphmp/error.hpp"

namespace usaphmp {

namespace {

std::size_t count_hubs(const HubMask& mask) {
  return static_cast<std::size_t>(
      std::count_if(mask.begin(), mask.end(), [](auto h) { return h != 0; }));
}

// Index of the `rank`-th position whose hub flag equals `want`.
std::size_t nth_with_flag(const HubMask& mask, bool want, std::size_t rank) {
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if ((mask[i] != 0) == want && rank-- == 0) return i;
  }
  return mask.size();
}

void check_length(const HubMask& mask, const Instance& inst) {
  if (mask.size() != inst.size()) {
    throw StructuralError("hub mask length " + std::to_string(mask.size()) +
                          " != " + std::to_string(inst.size()));
  }
}

}  // namespace

CrossoverChildren crossover_at(const HubMask& a, const HubMask& b,
                               std::size_t cut) {
  if (a.size() != b.size()) throw StructuralError("parents differ in length");
  if (cut > a.size()) throw StructuralError("cut point beyond chromosome");
  CrossoverChildren out{a, b};
  std::copy(b.begin() + static_cast<std::ptrdiff_t>(cut), b.end(),
            out.first.begin() + static_cast<std::ptrdiff_t>(cut));
  std::copy(a.begin() + static_cast<std::ptrdiff_t>(cut), a.end(),
            out.second.begin() + static_cast<std::ptrdiff_t>(cut));
  return out;
}

std::size_t draw_cut_point(std::size_t n, RngStream& rng) {
  if (n < 2) return 0;
  return 1 + rng.uniform_index(n - 1);
}

CrossoverChildren crossover(const Solution& a, const Solution& b,
                            RngStream& rng) {
  if (a.hub.size() != b.hub.size()) {
    throw StructuralError("parents differ in length");
  }
  return crossover_at(a.hub, b.hub, draw_cut_point(a.hub.size(), rng));
}

void swap_hub(HubMask& mask, RngStream& rng) {
  const std::size_t hubs = count_hubs(mask);
  if (hubs == 0 || hubs == mask.size()) return;
  const std::size_t close = nth_with_flag(mask, true, rng.uniform_index(hubs));
  const std::size_t open =
      nth_with_flag(mask, false, rng.uniform_index(mask.size() - hubs));
  mask[close] = 0;
  mask[open] = 1;
}

Solution correction(const HubMask& raw, const Instance& inst) {
  check_length(raw, inst);
  const std::size_t n = inst.size();
  const std::size_t p = inst.hubs();
  HubMask mask(n);
  std::vector<std::size_t> hubs;
  for (std::size_t i = 0; i < n; ++i) {
    mask[i] = raw[i] ? 1 : 0;
    if (mask[i]) hubs.push_back(i);
  }

  if (hubs.size() > p) {
    std::vector<std::size_t> alloc;
    detail::assign_nearest(hubs, inst, alloc);
    const auto out_flow = inst.out_flow();
    const auto in_flow = inst.in_flow();
    std::vector<double> load(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) load[alloc[i]] += out_flow[i] + in_flow[i];

    while (hubs.size() > p) {
      const auto victim = std::min_element(
          hubs.begin(), hubs.end(),
          [&](std::size_t a, std::size_t b) { return load[a] < load[b]; });
      const std::size_t closed = *victim;
      hubs.erase(victim);
      mask[closed] = 0;
      // Nodes routed elsewhere keep their hub: it is still their argmin.
      for (std::size_t i = 0; i < n; ++i) {
        if (alloc[i] != closed) continue;
        const auto row = inst.dist().row(i);
        std::size_t best = hubs.front();
        for (std::size_t k : hubs) {
          if (row[k] < row[best]) best = k;
        }
        alloc[i] = best;
        load[best] += out_flow[i] + in_flow[i];
      }
    }
  } else if (hubs.size() < p) {
    for (std::size_t node : inst.centrality_order()) {
      if (hubs.size() == p) break;
      if (!mask[node]) {
        mask[node] = 1;
        hubs.push_back(node);
      }
    }
  }
  return nearest_allocation(mask, inst);
}

Solution mutation(const Solution& sol, const Instance& inst, RngStream& rng) {
  check_length(sol.hub, inst);
  if (inst.hubs() == inst.size()) return sol;
  HubMask mask = sol.hub;
  swap_hub(mask, rng);
  return nearest_allocation(mask, inst);
}

Solution perturb(const Solution& ancestor, const Instance& inst,
                 RngStream& rng, std::size_t strength) {
  check_length(ancestor.hub, inst);
  if (strength < 1 || strength > inst.hubs()) {
    throw ParameterError("perturbation strength " + std::to_string(strength) +
                         " outside [1, " + std::to_string(inst.hubs()) + "]");
  }
  if (inst.hubs() == inst.size()) return ancestor;
  // Allocation depends only on the final hub set, so allocate once.
  HubMask mask = ancestor.hub;
  for (std::size_t s = 0; s < strength; ++s) swap_hub(mask, rng);
  return nearest_allocation(mask, inst);
}

}  // namespace usaphmp
