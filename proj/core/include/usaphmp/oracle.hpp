#pragma once

#include <cstdint>

#include "usaphmp/instance.hpp"
#include "usaphmp/solution.hpp"

namespace usaphmp {

inline constexpr std::uint64_t kDefaultEnumerationLimit = 10'000'000;

struct OracleResult {
  Solution solution;
  double raw_objective = 0.0;
  std::uint64_t candidates = 0;  ///< solutions evaluated
};

/// C(n, p) * p^(n - p), saturating at UINT64_MAX.
std::uint64_t exact_candidate_count(std::size_t n, std::size_t p);
/// C(n, p), saturating at UINT64_MAX.
std::uint64_t restricted_candidate_count(std::size_t n, std::size_t p);

/// Global optimum over every hub set and every spoke assignment. Hub sets
/// are visited in lexicographic order and, within one, assignments as a
/// mixed-radix counter over the spokes in index order, so the witness is
/// the lexicographically smallest optimum. Throws SizeError if the
/// candidate count exceeds `limit`.
OracleResult exact_optimum(const Instance& inst,
                           std::uint64_t limit = kDefaultEnumerationLimit);

/// Optimum over hub sets with nearest allocation, i.e. the space the GA
/// searches. Ties go to the lexicographically smallest hub set.
OracleResult restricted_optimum(const Instance& inst,
                                std::uint64_t limit = kDefaultEnumerationLimit);

}  // namespace usaphmp
