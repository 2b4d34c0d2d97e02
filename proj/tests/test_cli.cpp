#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

#include "ringnet/cli.hpp"

using namespace ringnet;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "ringnet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  static std::filesystem::path dir;

  static void SetUpTestSuite() {
    dir = std::filesystem::temp_directory_path() / "ringnet_cli_test";
    std::filesystem::remove_all(dir);
    for (const auto& e : catalog()) emit_entry(e, dir.string());
    write_file((dir / "butterfly.zero.assignment.json").string(),
               emit_assignment(uniform_assignment(butterfly(), parse_ring("GF2"), 0)));
  }
  static void TearDownTestSuite() { std::filesystem::remove_all(dir); }

  static std::string f(const std::string& name) { return (dir / name).string(); }
};

std::filesystem::path CliTest::dir;

}  // namespace

TEST_F(CliTest, VerifyDigitalAllOnes) {
  const CliRun r = run({"verify", f("digital_network.network.json"), f("digital_network.all-ones-GF2.assignment.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verdict: satisfied"), std::string::npos);
  const CliRun bad = run({"verify", f("digital_network.network.json"), f("digital_network.all-ones-GF2.assignment.json"), "--ring", "GF3"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("verdict: unsatisfied"), std::string::npos);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
  EXPECT_NE(bad.out.find("residual"), std::string::npos);
}

TEST_F(CliTest, VerifyFractionalReportsLowerBound) {
  const CliRun r = run({"verify", f("digital_network.network.json"), f("digital_network.digital-3-4.assignment.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("lower-bound: capacity >= 3/4 over Q"), std::string::npos);
  const CliRun g = run({"verify", f("analogue_network.network.json"), f("analogue_network.analogue-3-4.assignment.json")});
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("capacity >= 3/4 over GF2"), std::string::npos);
}

TEST_F(CliTest, VerifyWrongNetworkIsInputError) {
  const CliRun r = run({"verify", f("analogue_network.network.json"), f("digital_network.digital-3-4.assignment.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, VerifyMachineOutput) {
  const CliRun r = run({"--machine", "verify", f("butterfly.network.json"), f("butterfly.all-ones-GF2.assignment.json")});
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "satisfied");
  EXPECT_EQ(j["blocks"].size(), 4u);
}

TEST_F(CliTest, Transfer) {
  const CliRun r = run({"transfer", f("butterfly.network.json"), f("butterfly.all-ones-GF2.assignment.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("matrix: [[0, 1], [1, 0]]"), std::string::npos);
  const CliRun z = run({"transfer", f("butterfly.network.json"), f("butterfly.zero.assignment.json")});
  EXPECT_NE(z.out.find("matrix: [[0, 0], [0, 0]]"), std::string::npos);
  const CliRun s = run({"transfer", f("simple_satellite.network.json"), f("simple_satellite.satellite-1-2.assignment.json")});
  EXPECT_NE(s.out.find("matrix: [[0, 1], [1, 0]]"), std::string::npos);
}

TEST_F(CliTest, SearchVerdicts) {
  EXPECT_EQ(run({"search", f("analogue_network.network.json"), "GF2"}).code, 1);
  EXPECT_EQ(run({"search", f("digital_network.network.json"), "GF3", "--max-nodes", "10"}).code, 3);
  const auto out = dir / "solutions";
  const CliRun r = run({"search", f("digital_network.network.json"), "GF2", "--max-solutions", "1", "--out-dir", out.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verdict: solutions-found"), std::string::npos);
  ASSERT_TRUE(std::filesystem::exists(out / "solution-1.assignment.json"));
  EXPECT_EQ(run({"verify", f("digital_network.network.json"), (out / "solution-1.assignment.json").string()}).code, 0);
}

TEST_F(CliTest, SearchReportIsDeterministic) {
  const CliRun a = run({"search", f("butterfly.network.json"), "GF3", "--partitions", "3"});
  const CliRun b = run({"search", f("butterfly.network.json"), "GF3", "--partitions", "3"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, "");
  const CliRun v = run({"--verbose", "search", f("butterfly.network.json"), "GF3"});
  EXPECT_NE(v.err.find("elapsed-ms:"), std::string::npos);
}

TEST_F(CliTest, SearchBlocks) {
  const CliRun r = run({"search", f("simple_satellite.network.json"), "GF2", "--k", "2", "--n", "3", "--block", "5<-1", "--block",
                     "4<-2", "--block", "5<-2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("complete: true"), std::string::npos);
  EXPECT_EQ(run({"search", f("simple_satellite.network.json"), "GF2", "--block", "5-1"}).code, 2);
}

TEST_F(CliTest, RingCheck) {
  const CliRun r = run({"ring-check", "Z6", "--battery"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("conditions-agree: true"), std::string::npos);
  EXPECT_EQ(run({"ring-check", "GF2", "--k-stable", "2"}).code, 0);
  EXPECT_EQ(run({"ring-check", "Z6", "--k-stable", "2"}).code, 3);
  EXPECT_EQ(run({"ring-check", "Q"}).code, 2);
  EXPECT_EQ(run({"ring-check", "Z1"}).code, 2);
}

TEST_F(CliTest, Catalog) {
  const CliRun l = run({"catalog", "list"});
  EXPECT_EQ(l.code, 0);
  EXPECT_GE(std::count(l.out.begin(), l.out.end(), '\n'), 6);
  const auto out = dir / "emit";
  const CliRun e = run({"catalog", "emit", "digital_network", out.string()});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(out), std::filesystem::directory_iterator{}), 3);
  EXPECT_EQ(run({"catalog", "emit", "nosuch", out.string()}).code, 2);
}

TEST_F(CliTest, EmittedFilesReproduceVerdicts) {
  for (const auto& e : catalog()) {
    for (const auto& k : e.known) {
      for (const auto& [ring, expected] : k.expectations) {
        const CliRun r = run({"verify", f(e.name + ".network.json"), f(e.name + "." + k.label + ".assignment.json"), "--ring", ring});
        EXPECT_EQ(r.code, expected ? 0 : 1) << e.name << " " << k.label << " " << ring;
        EXPECT_EQ(r.out.find("verdict: satisfied") != std::string::npos, expected);
      }
    }
  }
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", "--unknown-flag"}).code, 2);
  EXPECT_EQ(run({"verify", f("missing.json"), f("missing.json")}).code, 2);
  EXPECT_EQ(run({"search", f("butterfly.network.json"), "Q"}).code, 2);
}

TEST_F(CliTest, BinaryExitCodes) {
  auto status = [](const std::string& args) {
    const std::string cmd = std::string(RINGNET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int s = std::system(cmd.c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("verify " + f("butterfly.network.json") + " " + f("butterfly.all-ones-GF2.assignment.json")), 0);
  EXPECT_EQ(status("verify " + f("butterfly.network.json") + " " + f("butterfly.all-ones-GF3.assignment.json")), 1);
  EXPECT_EQ(status("ring-check Q"), 2);
  EXPECT_EQ(status("search " + f("digital_network.network.json") + " GF3 --max-nodes 10"), 3);
}
