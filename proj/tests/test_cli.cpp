#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"
#include "usaphmp/bench.hpp"
#include "usaphmp/evaluation.hpp"
#include "usaphmp/io.hpp"

using namespace usaphmp;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = USAPHMP_FIXTURE_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "usaphmp");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "usaphmp_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ' ', 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

}  // namespace

TEST(CliEval, SevenNodeExample) {
  const auto inst_path = (kFixtures / "seven_node.coords").string();
  const auto r = run_cli({"eval", inst_path, (kFixtures / "seven_node.sol").string(),
                          "--fitness-mode", "raw"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(value_of(r.out, "hubs"), "2 5");

  const auto inst = load_instance(inst_path);
  EXPECT_EQ(nearest_allocation(HubMask{0, 1, 0, 0, 1, 0, 0}, inst).alloc,
            (std::vector<std::size_t>{1, 1, 4, 4, 4, 1, 4}));
  const double expected =
      testkit::path_sum(inst, {1, 1, 4, 4, 4, 1, 4});
  EXPECT_LT(testkit::rel_diff(std::stod(value_of(r.out, "raw_total")), expected), 1e-12);
  const auto cost = objective(inst, Solution{{0, 1, 0, 0, 1, 0, 0}, {1, 1, 4, 4, 4, 1, 4}});
  EXPECT_EQ(value_of(r.out, "collection_cost"), format_real(cost.collection_cost));
  EXPECT_EQ(value_of(r.out, "transfer_cost"), format_real(cost.transfer_cost));
  EXPECT_EQ(value_of(r.out, "distribution_cost"), format_real(cost.distribution_cost));
}

TEST(CliEval, AllHubsHasNoAccessCost) {
  const auto inst_path = (kFixtures / "seven_node.coords").string();
  const auto sol = scratch("all.sol");
  std::ofstream(sol) << "7 7\n1 2 3 4 5 6 7\n1 2 3 4 5 6 7\n";
  const auto r = run_cli({"eval", inst_path, sol.string(), "-p", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(value_of(r.out, "collection_cost"), "0");
  EXPECT_EQ(value_of(r.out, "distribution_cost"), "0");
}

TEST(CliEval, InfeasibleSolutionIsDataError) {
  const auto sol = scratch("bad.sol");
  std::ofstream(sol) << "7 2\n2 5\n2 2 5 5 5 3 5\n";
  const auto r = run_cli({"eval", (kFixtures / "seven_node.coords").string(), sol.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("node 6"), std::string::npos) << r.err;
}

TEST(CliSolve, DeterministicWithoutTiming) {
  const auto inst = scratch("det.usaphmp");
  ASSERT_EQ(run_cli({"gen", "-n", "15", "-p", "3", "--seed", "9", "--alpha", "0.75",
                     "-o", inst.string()})
                .code,
            0);
  const std::vector<std::string> args = {"solve", inst.string(), "--islands", "4",
                                         "--pop", "8", "--inner", "5", "--outer", "2",
                                         "--csv", "-", "--no-timing", "--seed", "3"};
  auto a = args, b = args;
  a.insert(a.end(), {"--workers", "1"});
  b.insert(b.end(), {"--workers", "3"});
  const auto ra = run_cli(a), rb = run_cli(b);
  ASSERT_EQ(ra.code, 0) << ra.err;
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_EQ(ra.out.rfind("label,n,p,mode,seed", 0), 0u);
}

TEST(CliSolve, HumanSummaryAndSolutionFile) {
  const auto sol = scratch("best.sol");
  const auto r = run_cli({"solve", (kFixtures / "seven_node.coords").string(), "--islands",
                          "2", "--pop", "4", "--inner", "5", "--outer", "2",
                          "--write-solution", sol.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("hubs         2 5"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("evaluations  80\n"), std::string::npos) << r.out;
  std::ifstream in(sol);
  const auto parsed = parse_solution(in);
  EXPECT_EQ(parsed.hub_nodes(), (std::vector<std::size_t>{1, 4}));
}

TEST(CliGen, ChecksumIsStable) {
  const auto path = scratch("g.usaphmp");
  const auto a = run_cli({"gen", "-n", "30", "-p", "4", "--seed", "5", "--alpha", "0.5",
                          "-o", path.string()});
  const auto b = run_cli({"gen", "-n", "30", "-p", "4", "--seed", "5", "--alpha", "0.5",
                          "-o", path.string()});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("fnv1a64 ", 0), 0u);
  const auto c = run_cli({"gen", "-n", "30", "-p", "4", "--seed", "6", "--alpha", "0.5",
                          "-o", path.string()});
  EXPECT_NE(a.out, c.out);
}

TEST(CliGen, LargeInstanceParsesBack) {
  const auto path = scratch("big.usaphmp");
  const auto r = run_cli({"gen", "-n", "1000", "-p", "20", "--seed", "1", "--alpha",
                          "0.75", "-o", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto inst = load_instance(path);
  EXPECT_EQ(inst.size(), 1000u);
  EXPECT_EQ(inst.hubs(), 20u);
  EXPECT_EQ(inst, generate_urand(1000, 20, 1, {1.0, 0.75, 1.0}));
}

TEST(CliOracle, ReportsBothModes) {
  const auto f = (kFixtures / "seven_node.coords").string();
  const auto r = run_cli({"oracle", f});
  const auto e = run_cli({"oracle", f, "--exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(value_of(r.out, "candidates"), "21");
  EXPECT_LE(std::stod(value_of(e.out, "raw")), std::stod(value_of(r.out, "raw")));
  EXPECT_EQ(run_cli({"oracle", f, "--exact", "--limit", "10"}).code, 2);
}

TEST(CliBench, ExitCodesFollowOutcome) {
  const auto manifest = scratch("m.csv");
  std::ofstream(manifest) << "label,instance,format,p,mode,known_best\n"
                          << "seven," << (kFixtures / "seven_node.coords").string()
                          << ",,,raw,1\n";
  const auto r = run_cli({"bench", manifest.string(), "--islands", "2", "--pop", "4",
                          "--inner", "2", "--outer", "1", "--seeds", "1,2"});
  EXPECT_EQ(r.code, 3) << r.out << r.err;
  EXPECT_NE(r.out.find("GAP-EXCEEDED"), std::string::npos);

  std::ofstream(manifest, std::ios::trunc) << "label,instance,format,p,mode,known_best\n";
  EXPECT_EQ(run_cli({"bench", manifest.string()}).code, 0);
}

TEST(CliSweep, WritesGrid) {
  const auto r = run_cli({"sweep", (kFixtures / "seven_node.coords").string(), "--alpha",
                          "0.2,0.8", "--chi-delta", "1:1", "--islands", "2", "--pop",
                          "4", "--inner", "2", "--outer", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "chi,delta,alpha,fitness,avg_interhub_distance");
  EXPECT_EQ(lines[1].rfind("1,1,0.2,", 0), 0u);
}

TEST(CliErrors, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"solve"}).code, 1);
  EXPECT_EQ(run_cli({"solve", "/nonexistent/x.usaphmp"}).code, 2);
  EXPECT_EQ(run_cli({"solve", (kFixtures / "seven_node.coords").string(), "--pop", "3"}).code,
            1);
  EXPECT_EQ(run_cli({"solve", (kFixtures / "seven_node.coords").string(), "--fitness-mode",
                     "fast"})
                .code,
            1);
  const auto broken = scratch("broken.usaphmp");
  std::ofstream(broken) << "3 1\n1 1 1\n0 1\n";
  const auto r = run_cli({"eval", broken.string(), (kFixtures / "seven_node.sol").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}
