#include <gtest/gtest.h>

#include <atomic>
#include <mutex>

#include "test_support.hpp"
#include "usaphmp/engine.hpp"
#include "usaphmp/error.hpp"
#include "usaphmp/io.hpp"
#include "usaphmp/oracle.hpp"
#include "usaphmp/rng.hpp"

using namespace usaphmp;
using usaphmp::testkit::brute_nearest;
using usaphmp::testkit::brute_restricted;
using usaphmp::testkit::independently_feasible;
using usaphmp::testkit::random_instance;
using usaphmp::testkit::rel_diff;

namespace {

GaParams small_params(std::uint64_t seed = 1) {
  GaParams p;
  p.islands = 8;
  p.pop_size = 16;
  p.inner_iters = 20;
  p.outer_iters = 5;
  p.perturb_strength = 2;
  p.seed = seed;
  return p;
}

std::vector<std::uint64_t> head(RngStream rng, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  for (auto& v : out) v = rng();
  return out;
}

}  // namespace

TEST(ResolveRng, SameKeySameStream) {
  EXPECT_EQ(head(resolve_rng(5, 3, StreamRole::kVariation), 1000),
            head(resolve_rng(5, 3, StreamRole::kVariation), 1000));
}

TEST(ResolveRng, IslandsSeedsAndRolesDiffer) {
  std::vector<std::vector<std::uint64_t>> streams;
  for (std::size_t island = 0; island < 256; ++island) {
    streams.push_back(head(resolve_rng(42, island, StreamRole::kPerturbation), 64));
  }
  for (std::size_t a = 0; a < streams.size(); ++a)
    for (std::size_t b = a + 1; b < streams.size(); ++b)
      ASSERT_NE(streams[a], streams[b]) << a << " vs " << b;
  for (std::uint64_t s = 0; s < 256; ++s) {
    EXPECT_NE(head(resolve_rng(s, 0, StreamRole::kVariation), 64),
              head(resolve_rng(s + 1, 0, StreamRole::kVariation), 64));
  }
  EXPECT_NE(head(resolve_rng(42, 0, StreamRole::kPerturbation), 64),
            head(resolve_rng(42, 0, StreamRole::kVariation), 64));
}

TEST(RngStream, BoundedDrawsStayInRange) {
  RngStream rng(3);
  for (std::size_t bound : {1u, 2u, 3u, 7u, 1000u}) {
    for (int t = 0; t < 1000; ++t) EXPECT_LT(rng.uniform_index(bound), bound);
  }
  for (int t = 0; t < 1000; ++t) {
    const double u = rng.uniform_unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(GaParams, Validation) {
  const auto inst = random_instance(6, 2, 1);
  auto p = small_params();
  EXPECT_NO_THROW(p.validate(inst));
  p.pop_size = 15;
  EXPECT_THROW(p.validate(inst), ParameterError);
  p = small_params();
  p.islands = 0;
  EXPECT_THROW(p.validate(inst), ParameterError);
  p = small_params();
  p.perturb_strength = 3;
  EXPECT_THROW(p.validate(inst), ParameterError);
  p.perturb_strength = 0;
  EXPECT_EQ(p.resolved_strength(inst), 2u);
  EXPECT_EQ(p.resolved_strength(random_instance(9, 7, 1)), 3u);
}

TEST(GaParams, FingerprintIgnoresSeed) {
  auto a = small_params(1), b = small_params(2);
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  b.inner_iters = 21;
  EXPECT_NE(a.fingerprint(), b.fingerprint());
  b = a;
  b.elitism = false;
  EXPECT_NE(a.fingerprint(), b.fingerprint());
}

TEST(Solve, AllHubsIsImmediate) {
  const auto inst = random_instance(5, 5, 2);
  const auto report = solve(inst, small_params(), FitnessMode::kRaw);
  EXPECT_EQ(report.best_solution.hub_nodes().size(), 5u);
  ASSERT_EQ(report.trace.size(), 5u);
  for (double v : report.trace) EXPECT_EQ(v, report.trace.front());
  double expected = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) expected += inst.flow(i, j) * inst.dist(i, j);
  EXPECT_LT(rel_diff(report.raw_objective, 0.75 * expected), 1e-12);
}

TEST(Solve, FindsRestrictedOptimumOnSmallInstance) {
  const auto inst = generate_urand(6, 2, 3, {1.0, 0.75, 1.0});
  const auto report = solve(inst, small_params(), FitnessMode::kStandardMilli);
  const auto oracle = restricted_optimum(inst);
  EXPECT_EQ(report.raw_objective, oracle.raw_objective);
  EXPECT_LT(rel_diff(report.raw_objective, brute_restricted(inst)), 1e-12);
  EXPECT_EQ(report.scaled_fitness, report.raw_objective * 1e-3);
}

TEST(Solve, BudgetTraceAndFeasibility) {
  const auto inst = random_instance(14, 3, 4);
  std::atomic<std::uint64_t> audited{0};
  std::atomic<bool> all_feasible{true};
  SolveOptions options;
  options.workers = 3;
  options.audit = [&](const Solution& sol, double) {
    ++audited;
    if (!independently_feasible(sol, inst)) all_feasible = false;
  };
  const auto params = small_params(9);
  const auto report = solve(inst, params, FitnessMode::kCabNormalized, options);
  EXPECT_EQ(report.evaluations, 8u * 5u * 20u * 16u);
  EXPECT_EQ(audited.load(), report.evaluations);
  EXPECT_TRUE(all_feasible.load());
  ASSERT_EQ(report.trace.size(), 5u);
  for (std::size_t t = 1; t < report.trace.size(); ++t) {
    EXPECT_LE(report.trace[t], report.trace[t - 1]);
  }
  EXPECT_EQ(report.trace.back(), report.scaled_fitness);
  EXPECT_EQ(report.scaled_fitness, report.raw_objective / inst.total_flow());
  EXPECT_EQ(report.best_solution.alloc, brute_nearest(report.best_solution.hub, inst));
  EXPECT_FALSE(report.interrupted);
}

TEST(Solve, NeverWorseThanInitialSolution) {
  const auto inst = random_instance(20, 4, 5);
  const auto report = solve(inst, small_params(), FitnessMode::kRaw);
  EXPECT_LE(report.raw_objective, objective(inst, initial_solution(inst)).raw_total);
}

TEST(Solve, DeterministicAcrossWorkerCounts) {
  const auto inst = random_instance(25, 4, 6);
  std::vector<SolveReport> reports;
  for (unsigned w : {1u, 2u, 4u, 16u}) {
    SolveOptions options;
    options.workers = w;
    reports.push_back(solve(inst, small_params(33), FitnessMode::kRaw, options));
  }
  for (const auto& r : reports) {
    EXPECT_EQ(r.best_solution, reports[0].best_solution);
    EXPECT_EQ(r.trace, reports[0].trace);
    EXPECT_EQ(r.evaluations, reports[0].evaluations);
  }
}

TEST(Solve, StrictModeStillFeasible) {
  const auto inst = random_instance(12, 3, 7);
  auto params = small_params();
  params.elitism = false;
  const auto report = solve(inst, params, FitnessMode::kRaw);
  EXPECT_TRUE(validate(report.best_solution, inst).ok());
  EXPECT_EQ(report.evaluations, 8u * 5u * 20u * 16u);
  EXPECT_EQ(report.trace.size(), 5u);
  EXPECT_EQ(report.trace.back(), report.raw_objective);
}

TEST(Solve, StopFlagReturnsBestSoFar) {
  const auto inst = random_instance(12, 3, 8);
  std::atomic<bool> stop{true};
  SolveOptions options;
  options.stop = &stop;
  const auto report = solve(inst, small_params(), FitnessMode::kRaw, options);
  EXPECT_TRUE(report.interrupted);
  EXPECT_TRUE(report.trace.empty());
  EXPECT_EQ(report.evaluations, 0u);
  EXPECT_EQ(report.best_solution, initial_solution(inst));

  std::atomic<bool> later{false};
  std::atomic<int> calls{0};
  options.stop = &later;
  options.workers = 1;
  options.audit = [&](const Solution&, double) {
    if (++calls == 500) later = true;
  };
  const auto partial = solve(inst, small_params(), FitnessMode::kRaw, options);
  EXPECT_TRUE(partial.interrupted);
  EXPECT_LT(partial.evaluations, 8u * 5u * 20u * 16u);
  EXPECT_TRUE(validate(partial.best_solution, inst).ok());
}

TEST(Solve, RejectsInvalidParams) {
  const auto inst = random_instance(6, 2, 9);
  auto params = small_params();
  params.pop_size = 3;
  EXPECT_THROW(solve(inst, params, FitnessMode::kRaw), ParameterError);
}
