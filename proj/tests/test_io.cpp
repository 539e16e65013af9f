#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "test_support.hpp"
#include "usaphmp/error.hpp"
#include "usaphmp/io.hpp"

using namespace usaphmp;

TEST(ParseInstance, CanonicalTwoNode) {
  const auto inst = parse_instance(
      "# tiny\n2 1\n1 1 1\n0 3\n3 0\n\n0 5\n5 0\n", InstanceFormat::kCanonical);
  EXPECT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst.hubs(), 1u);
  EXPECT_EQ(inst.dist(0, 1), 3.0);
  EXPECT_EQ(inst.total_flow(), 10.0);
}

TEST(ParseInstance, CoordinateDistancesAreEuclidean) {
  const auto inst = parse_instance("2 1\n1 1 1\n0 0\n3 4\n0 1\n1 0\n",
                                   InstanceFormat::kCoordinate);
  EXPECT_EQ(inst.dist(0, 1), 5.0);
  EXPECT_EQ(inst.dist(1, 0), 5.0);
  EXPECT_EQ(inst.dist(1, 1), 0.0);
}

TEST(ParseInstance, CoordinateFactorsCarriedThrough) {
  std::string text = "10 2\n3 0.75 2\n";
  for (int i = 0; i < 10; ++i) text += std::to_string(i * 7 % 10) + " " + std::to_string(i) + "\n";
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) text += (j ? " " : "") + std::to_string((i + j) % 4);
    text += "\n";
  }
  const auto inst = parse_instance(text, InstanceFormat::kCoordinate);
  EXPECT_EQ(inst.factors().collection, 3.0);
  EXPECT_EQ(inst.factors().transfer, 0.75);
  EXPECT_EQ(inst.factors().distribution, 2.0);
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j < 10; ++j) EXPECT_EQ(inst.dist(i, j), inst.dist(j, i));
  }
}

TEST(ParseInstance, ErrorsNameTheLine) {
  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      parse_instance(text, InstanceFormat::kCanonical);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 999;
  };
  EXPECT_EQ(line_of("2\n"), 1u);                                    // header arity
  EXPECT_EQ(line_of("2 3\n1 1 1\n"), 1u);                           // p > n
  EXPECT_EQ(line_of("2 1\n1 0 1\n0 3\n3 0\n0 1\n1 0\n"), 2u);       // zero factor
  EXPECT_EQ(line_of("2 1\n1 1 1\n0 3\n3 0\n0 x\n1 0\n"), 5u);       // non-numeric
  EXPECT_EQ(line_of("2 1\n1 1 1\n0 3\n-3 0\n0 1\n1 0\n"), 4u);      // negative
  EXPECT_EQ(line_of("2 1\n1 1 1\n0 3 4\n3 0\n0 1\n1 0\n"), 3u);     // row arity
  EXPECT_EQ(line_of("2 1\n1 1 1\n1 3\n3 0\n0 1\n1 0\n"), 3u);       // diagonal
  EXPECT_EQ(line_of("2 1\n1 1 1\n0 3\n3 0\n0 1\n1 0\n7\n"), 7u);    // trailing
  EXPECT_EQ(line_of("2 1\n1 1 1\n0 3\n3 0\n0 1\n"), 0u);            // truncated
  EXPECT_EQ(line_of("2 1\n1 1 1\n0 3\n3 0\n0 1\n1 inf\n"), 6u);     // non-finite
}

TEST(SerializeInstance, RoundTripsBitwise) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = testkit::random_instance(1 + seed % 9, 1, seed, seed % 2 == 0,
                                               {1.0 / 3.0, 0.1, 2.5e-7});
    const auto text = serialize_instance(inst);
    const auto back = parse_instance(text, InstanceFormat::kCanonical, inst.name());
    EXPECT_EQ(back, inst);
    EXPECT_EQ(serialize_instance(back), text);
  }
}

TEST(SerializeInstance, SingleNode) {
  const Instance inst(SquareMatrix(1), SquareMatrix(1), 1, {});
  const auto back = parse_instance(serialize_instance(inst), InstanceFormat::kCanonical);
  EXPECT_EQ(back, inst);
  EXPECT_EQ(back.total_flow(), 0.0);
}

TEST(SerializeInstance, LargeGeneratedRoundTrip) {
  const auto inst = generate_urand(400, 10, 3, {1.0, 0.75, 1.0});
  EXPECT_EQ(parse_instance(serialize_instance(inst), InstanceFormat::kCanonical), inst);
}

TEST(GenerateUrand, Deterministic) {
  const auto a = generate_urand(30, 4, 99, {1.0, 0.5, 1.0});
  const auto b = generate_urand(30, 4, 99, {1.0, 0.5, 1.0});
  EXPECT_EQ(a, b);
  EXPECT_EQ(serialize_instance(a), serialize_instance(b));
  EXPECT_FALSE(a == generate_urand(30, 4, 100, {1.0, 0.5, 1.0}));
}

TEST(GenerateUrand, PinnedOutput) {
  // Frozen from the first run; guards the generator algorithm against drift.
  const auto text = serialize_instance(generate_urand(5, 2, 42, {1.0, 0.75, 1.0}));
  EXPECT_EQ(fnv1a_hex(text), "017e59b645101a9d");
}

TEST(GenerateUrand, CoordinatesAndFlowsInRange) {
  const auto data = generate_urand_data(300, 5);
  for (const auto& pt : data.points) {
    EXPECT_GE(pt.x, 0.0);
    EXPECT_LE(pt.x, 100000.0);
    EXPECT_GE(pt.y, 0.0);
    EXPECT_LE(pt.y, 100000.0);
  }
  for (std::size_t i = 0; i < 300; ++i) {
    EXPECT_EQ(data.flow(i, i), 0.0);
    for (std::size_t j = 0; j < 300; ++j) {
      const double w = data.flow(i, j);
      EXPECT_GE(w, 0.0);
      EXPECT_LE(w, 100.0);
      EXPECT_EQ(w, std::floor(w));
    }
  }
}

TEST(GenerateUrand, DistancesAreMetric) {
  const auto inst = generate_urand(25, 3, 17, {1.0, 1.0, 1.0});
  const std::size_t n = inst.size();
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_EQ(inst.dist(i, i), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(inst.dist(i, j), inst.dist(j, i));
      for (std::size_t k = 0; k < n; ++k) {
        EXPECT_LE(inst.dist(i, k), inst.dist(i, j) + inst.dist(j, k) + 1e-9);
      }
    }
  }
}

TEST(SolutionFile, RoundTripAndErrors) {
  const auto sol = parse_solution("7 2\n2 5\n2 2 5 5 5 2 5\n");
  EXPECT_EQ(sol.hub_nodes(), (std::vector<std::size_t>{1, 4}));
  EXPECT_EQ(sol.alloc[5], 1u);
  EXPECT_EQ(parse_solution(serialize_solution(sol)), sol);
  EXPECT_THROW(parse_solution("3 1\n4\n1 1 1\n"), ParseError);
  EXPECT_THROW(parse_solution("3 2\n1 1\n1 1 1\n"), ParseError);
  EXPECT_THROW(parse_solution("3 1\n1\n1 1\n"), ParseError);
  EXPECT_THROW(parse_solution("3 1\n1\n1 1 1\nextra\n"), ParseError);
}

TEST(LoadInstance, ExtensionSelectsFormat) {
  const auto dir = std::filesystem::temp_directory_path() / "usaphmp_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "a.coords") << "2 1\n1 1 1\n0 0\n3 4\n0 1\n1 0\n";
  }
  const auto inst = load_instance(dir / "a.coords");
  EXPECT_EQ(inst.dist(0, 1), 5.0);
  EXPECT_EQ(inst.name(), "a");
  EXPECT_THROW(load_instance(dir / "missing.usaphmp"), Error);
  EXPECT_EQ(format_for_path("x.usaphmp"), InstanceFormat::kCanonical);
  EXPECT_EQ(parse_format("coordinate"), InstanceFormat::kCoordinate);
  EXPECT_THROW(parse_format("binary"), ParameterError);
}
