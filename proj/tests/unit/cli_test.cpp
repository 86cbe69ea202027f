/*
 * Copyright 2026 The ERI-Bench Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace eri::cli {
namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "eri-bench");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, SampleSize) {
  const auto r = run({"sample-size", "--eta", "0.05", "--delta", "0.05"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("738"), std::string::npos);
  EXPECT_EQ(run({"sample-size", "--eta", "2", "--delta", "0.05"}).code, kExitConfig);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"--no-such-flag"}).code, kExitConfig);
  EXPECT_EQ(run({"sample-size"}).code, kExitConfig);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"score", "--set", "bogus=1"}).code, kExitConfig);
  EXPECT_EQ(run({"score", "--set", "mc_samples=abc"}).code, kExitConfig);
  EXPECT_EQ(run({"score", "--set", "noequals"}).code, kExitConfig);
}

TEST(Cli, DivergenceIsNumericalExit) {
  const auto r = run({"decoupling", "--set", "learning_rate=1e300", "--set", "steps=5", "--set",
                      "n=200", "--set", "mc_samples=5"});
  EXPECT_EQ(r.code, kExitNumerical);
  EXPECT_NE(r.err.find("diverged"), std::string::npos);
}

TEST(Cli, ScoreIsDeterministic) {
  const std::vector<std::string> args = {"score", "--set", "mc_samples=20", "--set",
                                         "explainer=Constant"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"aggregate\""), std::string::npos);
  EXPECT_NE(a.out.find("\"config_hash\""), std::string::npos);
}

TEST(Cli, CollapseWritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "eri_cli_test";
  std::filesystem::remove_all(dir);
  const auto r = run({"collapse-curve", "--set", "n=400", "--set", "explainers=MCIR,Random",
                      "--set", "alphas=0,0.5,1", "-o", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream csv(dir / "collapse-curve.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "explainer,alpha,duplicate_score");
  EXPECT_TRUE(std::filesystem::exists(dir / "collapse-curve.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, ConfigFileAndOverride) {
  const auto path = std::filesystem::temp_directory_path() / "eri_cli_test.conf";
  {
    std::ofstream f(path);
    f << "# score settings\nmc_samples = 10\nexplainer = Constant\ncomponents = S,T\n";
  }
  const auto r = run({"score", "-c", path.string(), "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "component,score,mean_drift,n,standard_error,hoeffding_radius");
  EXPECT_NE(r.out.find("\nERI-S,1,0,100,0,undefined\n"), std::string::npos);
  const auto over = run({"score", "-c", path.string(), "--set", "mc_samples=3", "--format", "csv"});
  EXPECT_NE(over.out.find("\nERI-S,1,0,30,"), std::string::npos);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"score", "-c", path.string()}).code, kExitConfig);
}

}  // namespace
}  // namespace eri::cli
