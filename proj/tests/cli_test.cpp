// Copyright 2026 The selfsim Authors
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

// Runs the selfsim binary and checks outputs and exit codes.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SELFSIM_CLI + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    v.push_back(l);
  }
  return v;
}

TEST(Cli, CheckLemmasPasses) {
  for (const char* g : {"G", "H", "I"}) {
    const Result r = run(std::string("check-lemmas --group ") + g);
    ASSERT_EQ(r.code, 0) << g;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["ok"].get<bool>());
    EXPECT_EQ(j["config"]["group"], g);
    EXPECT_FALSE(j["version"].get<std::string>().empty());
  }
  const auto j = nlohmann::json::parse(run("check-lemmas --group I").out);
  EXPECT_EQ(j["reports"].size(), 4u);
  EXPECT_EQ(j["reports"][1]["checks"].size(), 17u);
}

TEST(Cli, CheckLemmasOnAFile) {
  const Result r = run("check-lemmas --group file:" SELFSIM_SAMPLES "/adding_machine.rec");
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, MalformedGroupFileIsAUsageError) {
  const std::string path = testing::TempDir() + "/broken.rec";
  std::ofstream(path) << "s = (1, 1) swap\na = s b\n";
  EXPECT_EQ(run("check-lemmas --group file:" + path).code, 2);
  EXPECT_EQ(run("check-lemmas --group file:/nonexistent.rec").code, 2);
  EXPECT_EQ(run("check-lemmas --group K").code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("ball").code, 2);
  EXPECT_EQ(run("ball --radius -1").code, 2);
  EXPECT_EQ(run("badcount --group H --epsilon 3/2").code, 2);
  EXPECT_EQ(run("badcount --group G --radius 10").code, 2);
  EXPECT_EQ(run("verify patterns --group G").code, 2);
  EXPECT_EQ(run("verify basictool --group G --eta x").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, GrowthCsv) {
  const Result r = run("growth --group G --max-radius 40");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 42u);
  EXPECT_EQ(ls[0], "r,gamma,rate_estimate");
  EXPECT_EQ(ls[1], "0,1,");
  EXPECT_EQ(ls[4].substr(0, 4), "3,3,");
  long long prev = 0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto c1 = ls[i].find(','), c2 = ls[i].find(',', c1 + 1);
    const long long g = std::stoll(ls[i].substr(c1 + 1, c2 - c1 - 1));
    EXPECT_GE(g, prev);
    prev = g;
  }
}

TEST(Cli, OutputIsIndependentOfThreads) {
  for (const char* args : {"ball --group G --radius 30", "growth --group I --max-radius 36",
                           "ball --group H --radius 24"}) {
    const Result a = run(std::string(args) + " --threads 1");
    const Result b = run(std::string(args) + " --threads 4");
    const Result c = run(args, "SELFSIM_THREADS=3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_EQ(a.out, c.out) << args;
  }
}

TEST(Cli, BallCsv) {
  const auto ls = lines(run("ball --group G --radius 5").out);
  ASSERT_EQ(ls.size(), 6u);
  EXPECT_EQ(ls[0], "portrait_hex,min_length,geodesic");
  EXPECT_NE(ls[1].find(",0,1"), std::string::npos);
  EXPECT_NE(ls.back().find(",5,a"), std::string::npos);
}

TEST(Cli, BudgetExceeded) {
  EXPECT_EQ(run("ball --group G --radius 40 --max-entries 10").code, 3);
}

TEST(Cli, VerifyReduction) {
  const Result r = run("verify reduction --group G --radius 30");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["violations"], 0);
  EXPECT_EQ(run("verify reduction --group G --radius 20 --eta 1/2 --shift 0").code, 1);
}

TEST(Cli, VerifyBasicTool) {
  const Result r = run("verify basictool --group G --depth 1 --eta 7/8 --p 1 --shift 3 --radius 30");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["certificate"]["validates"].get<bool>());
  const Result m = run("verify basictool --group I --depth 3 --radius 30");
  ASSERT_EQ(m.code, 0);
  const auto j = nlohmann::json::parse(m.out);
  EXPECT_EQ(j["certificate"]["proportion_observed"], "1");
}

TEST(Cli, VerifyPatterns) {
  EXPECT_EQ(run("verify patterns --group I").code, 0);
  EXPECT_EQ(run("verify patterns --group I --catalog standard").code, 0);
  EXPECT_EQ(run("verify patterns --group I --catalog other").code, 2);
}

TEST(Cli, BadStringsToFile) {
  const std::string path = testing::TempDir() + "/census.json";
  EXPECT_EQ(run("badstrings --max-k 20 --out " + path).code, 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["census"]["counts"][0]["count"], 16);
  EXPECT_EQ(j["census"]["surviving_blocks"].size(), 4u);
  // The twelve published blocks alone leave the count unbounded.
  EXPECT_EQ(run("badstrings --max-k 20 --catalog standard").code, 1);
}

TEST(Cli, BadCount) {
  const Result r = run("badcount --group H --radius 30 --epsilon 1/10");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["count"]["within_stated_bound"].get<bool>());
  EXPECT_EQ(j["config"]["epsilon"], "1/10");
}

}  // namespace
