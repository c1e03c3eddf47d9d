#include "cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace nichols::cli {
namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "nichols");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--json");
  return nlohmann::json::parse(run(std::move(args)).out);
}

TEST(Cli, FreeAlgebraSeries) {
  const auto d = run_json({"hilbert", "--algebra", "free2", "--max-degree", "5"});
  EXPECT_EQ(d["reports"][0]["hilbert"]["coefficients"], nlohmann::json({1, 2, 4, 8, 16, 32}));
  EXPECT_EQ(d["schema_version"], kSchemaVersion);
  EXPECT_EQ(d["exit_code"], 0);
}

TEST(Cli, PreNicholsHasThirteenCoefficients) {
  const auto d = run_json({"hilbert", "--algebra", "prenichols", "--max-degree", "12"});
  EXPECT_EQ(d["reports"][0]["hilbert"]["coefficients"].size(), 13u);
  EXPECT_EQ(d["status"], "pass");
}

TEST(Cli, BasisOfTheWeightThreeAlgebra) {
  const auto d = run_json({"basis", "--algebra", "v112"});
  EXPECT_EQ(d["result"]["words"].size(), 12u);
}

TEST(Cli, VerifyFk3) {
  const auto r = run({"verify", "fk3"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_NE(r.out.find("pass"), std::string::npos);
}

TEST(Cli, OutputIsByteIdentical) {
  const std::vector<std::string> args = {"verify", "fk3", "v2", "properties", "--seed", "3", "--jobs", "3", "--json"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, PoolKeepsTaskOrder) {
  std::vector<std::function<CheckReport()>> tasks;
  for (int i = 0; i < 16; ++i)
    tasks.push_back([i] {
      CheckReport r;
      r.check = std::to_string(i);
      r.status = Status::Pass;
      return r;
    });
  const auto out = run_pool(tasks, 4);
  for (int i = 0; i < 16; ++i) EXPECT_EQ(out[static_cast<size_t>(i)].check, std::to_string(i));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify", "nonsense"}).code, kConfigError);
  EXPECT_EQ(run({"hilbert", "--algebra", "free0"}).code, kConfigError);
  EXPECT_EQ(run({"basis", "--algebra", "free2"}).code, kConfigError);
  EXPECT_EQ(run({"lifting", "--lambda", "0,0,1", "--group", "env:6,6"}).code, kConfigError);
  EXPECT_EQ(run({"lifting", "fk3", "--group", "s3", "--lambda", "1,0"}).code, kConfigError);
  EXPECT_EQ(run({"lifting", "--lambda", "x+", "--group", "env:6,6"}).code, kConfigError);
  EXPECT_EQ(run({"lifting", "--specialize", "w", "--group", "env:6,6"}).code, kConfigError);
  EXPECT_EQ(run({"lifting", "top", "--lambda", "1", "--group", "env:6,12", "--budget", "0.5"}).code, kResourceLimit);
}

TEST(Cli, ExitCodeOrdering) {
  CheckReport pass, fail, unknown;
  pass.status = Status::Pass;
  fail.status = Status::Fail;
  unknown.status = Status::Unknown;
  EXPECT_EQ(exit_code({pass, unknown}), kResourceLimit);
  EXPECT_EQ(exit_code({unknown, fail}), kFail);
  EXPECT_EQ(exit_code({pass}), kPass);
}

TEST(Cli, SpecializedRunsAreMarked) {
  const auto d = run_json({"lifting", "fk3", "--group", "s3", "--lambda", "0,1", "--specialize", "q1=w"});
  EXPECT_TRUE(d["config"]["specialized"].get<bool>());
  EXPECT_EQ(d["status"], "pass");
}

}  // namespace
}  // namespace nichols::cli
