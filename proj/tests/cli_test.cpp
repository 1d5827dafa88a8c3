// Copyright 2026 The qapland Authors
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

#include "qapland/cli.hpp"

#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

namespace qapland {
namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kSample = std::string(QAPLAND_TEST_DATA_DIR) + "/sample3.dat";

TEST(CliTest, DecomposeSampleFile) {
  const auto r = Cli({"decompose", "--instance", kSample, "--perm", "0,1,2", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  // f(id) = sum_ij r_ij w_ij = 2*(1*5 + 2*5 + 3*5) = 60.
  EXPECT_EQ(doc["results"]["f"], "60");
  EXPECT_EQ(doc["results"]["sum"], "60");
  EXPECT_EQ(doc["mode"], "rational");
  EXPECT_EQ(doc["n"], 3);
}

TEST(CliTest, JsonSchemaIsStableAcrossCommands) {
  for (const std::string cmd : {"decompose", "avg", "stats", "verify", "autocorr"}) {
    std::vector<std::string> args = {cmd, "--gen", "4,3,0,9", "--format", "json", "--steps", "400"};
    const auto r = Cli(args);
    ASSERT_EQ(r.code, kExitOk) << cmd << ": " << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : doc.items()) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    EXPECT_EQ(keys, (std::vector<std::string>{"command", "mode", "n", "residuals", "results"})) << cmd;
    EXPECT_EQ(doc["command"], cmd);
  }
}

TEST(CliTest, RationalValuesAreFractionStrings) {
  const auto r = Cli({"stats", "--gen", "5,3,0,9", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["results"]["mean_c1"].is_string());
  const auto f = Cli({"stats", "--gen", "5,3,0,9", "--format", "json", "--mode", "float"});
  EXPECT_TRUE(nlohmann::json::parse(f.out)["results"]["mean_c1"].is_number());
}

TEST(CliTest, VerifyPassesCleanAndFailsWhenPerturbed) {
  const auto clean = Cli({"verify", "--n", "4", "--seed", "1"});
  EXPECT_EQ(clean.code, kExitOk) << clean.out;
  EXPECT_NE(clean.out.find("status: ok"), std::string::npos);
  for (const std::string p : {"k1=1", "k2=1/7", "k3=-1", "w1=1/100", "w3=1"}) {
    const auto bad = Cli({"verify", "--n", "4", "--seed", "1", "--perturb", p});
    EXPECT_EQ(bad.code, kExitVerification) << p;
  }
}

TEST(CliTest, ValidationFailures) {
  const auto dup = Cli({"decompose", "--gen", "3,1,0,9", "--perm", "0,0,1"});
  EXPECT_EQ(dup.code, kExitValidation);
  EXPECT_NE(dup.err.find("not a bijection"), std::string::npos);
  EXPECT_EQ(Cli({"decompose", "--gen", "3,1,0,9", "--bogus"}).code, kExitValidation);
  EXPECT_EQ(Cli({"frobnicate", "--gen", "3,1,0,9"}).code, kExitValidation);
  EXPECT_EQ(Cli({"decompose"}).code, kExitValidation);
  EXPECT_EQ(Cli({"decompose", "--gen", "3,1,0,9", "--instance", kSample}).code, kExitValidation);
  EXPECT_EQ(Cli({"decompose", "--instance", "/nonexistent/file.dat"}).code, kExitValidation);
  EXPECT_EQ(Cli({"decompose", "--gen", "3,1"}).code, kExitValidation);
  EXPECT_EQ(Cli({"decompose", "--gen", "3,1,0,9", "--perm", "0,1"}).code, kExitValidation);
  EXPECT_EQ(Cli({"verify", "--gen", "3,1,0,9", "--perturb", "q1=1"}).code, kExitValidation);
}

TEST(CliTest, AutocorrCsvIsTheWalk) {
  const auto r = Cli({"autocorr", "--gen", "5,1,0,9", "--steps", "100", "--max-lag", "3", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("step,fitness\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 102);
}

TEST(CliTest, HelpExitsCleanly) {
  const auto r = Cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("--instance"), std::string::npos);
}

}  // namespace
}  // namespace qapland
