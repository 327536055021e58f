#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "arcmarkov/json_io.hpp"
#include "cli.hpp"

using arcmarkov::json;
namespace cli = arcmarkov::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, EqMeasureSingleArc) {
  const auto r = run({"eq-measure", "--tset", "single", "--theta0", "1.5707963267948966",
                      "--expect-omega", "0.15915494309189535"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["command"], "eq-measure");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["seed"], 0);
  EXPECT_EQ(j["config_hash"].get<std::string>().size(), 16u);
  EXPECT_NEAR(j["result"]["endpoints"][0]["factor"]["omega"].get<double>(), 0.15915494309189535, 1e-10);
}

TEST(Cli, FailedExpectationExitsWithOne) {
  const auto r = run({"eq-measure", "--arcs", "[-1,1]", "--expect-omega", "0.5"});
  EXPECT_EQ(r.code, cli::kAssertionFailed);
  EXPECT_FALSE(json::parse(r.out)["pass"].get<bool>());
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "AssertionFailed");
}

TEST(Cli, ConfigErrorsExitWithTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"eq-measure", "--arcs", "[1,0]"},
           {"verify-markov", "--tset", "nonsense"},
           {"tset", "--config", "/nonexistent/config.json"},
           {"no-such-command"},
           {"faa", "--f", "1,x"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, cli::kConfigError) << args[0] << " " << (args.size() > 1 ? args[1] : "");
    EXPECT_TRUE(json::parse(r.err).contains("error"));
  }
}

TEST(Cli, FaaMatchesExact) {
  const auto r = run({"faa", "--f", "0,0,1", "--g", "0,0,0,1", "--x", "1", "--k", "2"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_DOUBLE_EQ(json::parse(r.out)["result"]["faa_di_bruno"].get<double>(), 30.0);
}

TEST(Cli, CsvHasHashAndSeedColumns) {
  const auto r = run({"verify-markov", "--tset", "two", "--k", "1", "--random", "3", "--n", "16",
                      "--seed", "9", "--format", "csv"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  EXPECT_NE(header.find("config_hash,seed"), std::string::npos);
  EXPECT_EQ(header.back(), '\r');
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(line.substr(line.size() - 3), ",9\r");
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

TEST(Cli, DeterministicAndHashTracksConfig) {
  const std::vector<std::string> a{"verify-markov", "--tset", "two", "--k", "2", "--random", "4",
                                   "--n", "24", "--seed", "5"};
  const auto r1 = run(a), r2 = run(a);
  EXPECT_EQ(r1.out, r2.out);
  auto b = a;
  b.back() = "6";
  const auto r3 = run(b);
  EXPECT_NE(json::parse(r1.out)["config_hash"], json::parse(r3.out)["config_hash"]);
  // --output does not enter the hash
  const std::string path = ::testing::TempDir() + "cli_hash.json";
  auto c = a;
  c.insert(c.end(), {"--output", path});
  ASSERT_EQ(run(c).code, cli::kPass);
  std::ifstream in(path);
  EXPECT_EQ(json::parse(in)["config_hash"], json::parse(r1.out)["config_hash"]);
}
