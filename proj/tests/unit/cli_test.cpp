// Copyright 2026 The pcsi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"

namespace pcsi::cli {
namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "pcsi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(CliTest, DemoOne) {
  CliRun r = run({"demo", "--example", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Q_1 = (2,4,1,3)   A_1 = 3X_2+X_4+X_1+5X_3"), std::string::npos);
  EXPECT_NE(r.out.find("recovery: A_1-Y"), std::string::npos);
  EXPECT_NE(r.out.find("Z = X_1+3X_2"), std::string::npos);
}

TEST(CliTest, DemoThreeNotesTheRecomputedCoefficient) {
  CliRun r = run({"demo", "--example", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("recomputed value 4"), std::string::npos);
  EXPECT_NE(r.out.find("I = {1,2}, c = (1,5)"), std::string::npos);
}

TEST(CliTest, VerifyExitCodes) {
  CliRun ok = run({"verify", "--protocol", "gmpc", "--K", "6", "--M", "1", "--D", "1", "--q", "3"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("result: PASS"), std::string::npos);
  CliRun bad = run({"verify", "--protocol", "gmpc", "--K", "5", "--M", "0", "--D", "2", "--q", "3"});
  EXPECT_EQ(bad.code, 1);
  CliRun budget = run({"verify", "--protocol", "gmpc", "--K", "8", "--M", "2", "--D", "2", "--q",
                    "3", "--budget", "100"});
  EXPECT_EQ(budget.code, 2);
  EXPECT_NE(budget.err.find("--mode mc"), std::string::npos);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"verify", "--bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "--protocol", "gmpc", "--K", "3", "--M", "2", "--D", "2"}).code, 2);
  EXPECT_EQ(run({"verify", "--protocol", "pcia", "--K", "11", "--M", "2", "--D", "2", "--q", "7"})
                .code,
            2);
  EXPECT_EQ(run({"demo", "--example", "9"}).code, 2);
}

TEST(CliTest, JsonOutputIsDeterministic) {
  std::vector<std::string> args{"verify", "--protocol", "gmpc", "--K",     "5",    "--M",
                                "1",      "--D",        "1",    "--q",     "3",    "--mode",
                                "mc",     "--trials",   "2000", "--format", "json"};
  CliRun a = run(args);
  CliRun b = run(args);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"trials\""), std::string::npos);
}

TEST(CliTest, Capacity) {
  CliRun r = run({"capacity", "--grid", "4:5", "--M", "2", "--D", "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "K,M,D,setting,rate,cost,kind");
  EXPECT_NE(r.out.find("5,2,2,JPC-CSI,,,not-covered"), std::string::npos);
  CliRun c = run({"capacity", "--compare", "--K", "12", "--M", "2", "--D", "2", "--format", "csv"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("12,2,2,JPIR-CSI,1/11,11,exact"), std::string::npos);
  EXPECT_EQ(run({"capacity", "--grid", "9:4"}).code, 2);
}

TEST(CliTest, Simulate) {
  CliRun r = run({"simulate", "--protocol", "gmpc", "--K", "11", "--M", "2", "--D", "2", "--q", "7",
               "--trials", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("recovered 50"), std::string::npos);
  EXPECT_NE(r.out.find("measured rate 1/3"), std::string::npos);
}

}  // namespace
}  // namespace pcsi::cli
