#include "usaphmp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "usaphmp/error.hpp"
#include "usaphmp/evaluation.hpp"

namespace usaphmp {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

// Advances `idx` to the next p-combination of [0, n) in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t p = idx.size();
  std::size_t i = p;
  while (i > 0 && idx[i - 1] == n - p + (i - 1)) --i;
  if (i == 0) return false;
  ++idx[i - 1];
  for (std::size_t j = i; j < p; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

std::vector<std::size_t> first_combination(std::size_t p) {
  std::vector<std::size_t> idx(p);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

}  // namespace

std::uint64_t restricted_candidate_count(std::size_t n, std::size_t p) {
  if (p > n) return 0;
  p = std::min(p, n - p);
  // C(n, k) built incrementally; each prefix is an exact binomial.
  std::uint64_t c = 1;
  for (std::size_t k = 1; k <= p; ++k) {
    // c * m / k is integral; after removing gcd(c, k), k divides m.
    const std::uint64_t g = std::gcd(c, static_cast<std::uint64_t>(k));
    c = saturating_mul(c / g, (n - p + k) / (k / g));
    if (c == kSaturated) return kSaturated;
  }
  return c;
}

std::uint64_t exact_candidate_count(std::size_t n, std::size_t p) {
  std::uint64_t count = restricted_candidate_count(n, p);
  for (std::size_t s = p; s < n && count != kSaturated; ++s) {
    count = saturating_mul(count, p);
  }
  return count;
}

OracleResult exact_optimum(const Instance& inst, std::uint64_t limit) {
  const std::size_t n = inst.size();
  const std::size_t p = inst.hubs();
  const std::uint64_t required = exact_candidate_count(n, p);
  if (required > limit) throw SizeError(required, limit);

  OracleResult best;
  bool found = false;
  auto hubs = first_combination(p);
  Solution sol;
  std::vector<std::size_t> spokes;
  std::vector<std::size_t> digits;
  do {
    sol.hub.assign(n, 0);
    sol.alloc.assign(n, 0);
    for (std::size_t k : hubs) {
      sol.hub[k] = 1;
      sol.alloc[k] = k;
    }
    spokes.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!sol.hub[i]) spokes.push_back(i);
    }
    digits.assign(spokes.size(), 0);
    for (;;) {
      for (std::size_t t = 0; t < spokes.size(); ++t) {
        sol.alloc[spokes[t]] = hubs[digits[t]];
      }
      const double raw = objective(inst, sol).raw_total;
      ++best.candidates;
      if (!found || raw < best.raw_objective) {
        found = true;
        best.raw_objective = raw;
        best.solution = sol;
      }
      // Odometer: last spoke is the least significant digit.
      std::size_t t = digits.size();
      while (t > 0 && digits[t - 1] + 1 == p) digits[--t] = 0;
      if (t == 0) break;
      ++digits[t - 1];
    }
  } while (next_combination(hubs, n));
  return best;
}

OracleResult restricted_optimum(const Instance& inst, std::uint64_t limit) {
  const std::size_t n = inst.size();
  const std::size_t p = inst.hubs();
  const std::uint64_t required = restricted_candidate_count(n, p);
  if (required > limit) throw SizeError(required, limit);

  OracleResult best;
  bool found = false;
  auto hubs = first_combination(p);
  do {
    Solution sol = nearest_allocation(hubs, inst);
    const double raw = objective(inst, sol).raw_total;
    ++best.candidates;
    if (!found || raw < best.raw_objective) {
      found = true;
      best.raw_objective = raw;
      best.solution = std::move(sol);
    }
  } while (next_combination(hubs, n));
  return best;
}

}  // namespace usaphmp
