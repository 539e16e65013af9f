#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "usaphmp/instance.hpp"

namespace usaphmp::detail {

// Nearest-hub allocation for an arbitrary nonempty ascending hub list.
// Hubs map to themselves; others to the argmin distance, lowest index on ties.
void assign_nearest(std::span<const std::size_t> sorted_hubs,
                    const Instance& inst, std::vector<std::size_t>& alloc);

}  // namespace usaphmp::detail
