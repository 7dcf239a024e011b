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

#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "selfsim/group_defs.hpp"
#include "selfsim/metric.hpp"

namespace selfsim {
namespace {

std::vector<oracle::Gen> oracle_gens(const std::string& which) {
  if (which == "G") return {{"s", "s", 3}, {"a", "a", 5}, {"b", "b", 4}, {"c", "c", 3}};
  if (which == "H") return {{"s", "s", 3}, {"a", "a", 5}, {"b", "b", 4}, {"c", "ab", 3}};
  if (which == "I") return {{"s", "s", 3}, {"a", "a", 4}, {"b", "b", 4}};
  std::vector<oracle::Gen> ext{{"s", "s", 3}};
  for (char first : {'a', 'b'})
    for (int i = 1; i <= (first == 'a' ? 8 : 7); ++i) {
      std::string w;
      for (int j = 0; j < i; ++j) w += (j % 2 == 0) == (first == 'a') ? 'a' : 'b';
      ext.push_back({std::string(1, first) + (i > 1 ? std::to_string(i) : ""), w, 4 * i});
    }
  return ext;
}

struct OracleClass {
  std::string word;  // a shortest representative
  int length;
};

// Elements of the ball by brute force: every word of weight <= radius,
// grouped by their action on level 10 and then by equality.
std::vector<OracleClass> oracle_ball(const NamedGroup& g, char rules_id,
                                     const std::vector<oracle::Gen>& gens, int radius) {
  const auto& rules = oracle::rules(rules_id);
  std::map<std::vector<std::string>, std::vector<OracleClass>> buckets;
  for (const auto& w : oracle::all_words(gens, radius)) {
    auto& bucket = buckets[oracle::signature(rules, w.word, 10)];
    bool found = false;
    for (auto& c : bucket)
      if (equal(g.element(c.word), g.element(w.word))) {
        c.length = std::min(c.length, w.weight);
        found = true;
        break;
      }
    if (!found) bucket.push_back({w.word, w.weight});
  }
  std::vector<OracleClass> out;
  for (auto& [sig, b] : buckets) out.insert(out.end(), b.begin(), b.end());
  return out;
}

struct BallCase {
  const char* name;
  GroupId id;
  char rules;
  bool extended;
};

class BallOracle : public ::testing::TestWithParam<BallCase> {};

TEST_P(BallOracle, MatchesBruteForce) {
  const auto& c = GetParam();
  const auto& g = builtin(c.id);
  const auto& gens = c.extended ? g.extended : g.standard;
  Ball ball(gens);
  for (int r : {0, 3, 7, 12, 16}) {
    ball.extend_to(r);
    const auto expected = oracle_ball(g, c.rules, oracle_gens(c.name), r);
    EXPECT_EQ(ball.count_up_to(r), expected.size()) << c.name << " r=" << r;
    for (const auto& e : expected) {
      auto id = ball.find(g.element(e.word));
      ASSERT_TRUE(id) << c.name << " missing " << e.word;
      EXPECT_EQ(ball.length(*id), e.length) << c.name << " " << e.word;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, BallOracle,
                         ::testing::Values(BallCase{"G", GroupId::G, 'G', false},
                                           BallCase{"H", GroupId::H, 'H', false},
                                           BallCase{"I", GroupId::I, 'I', false},
                                           BallCase{"Iext", GroupId::I, 'I', true}),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(Ball, SmallRadii) {
  const auto& G = builtin(GroupId::G);
  Ball b(G.standard);
  b.extend_to(3);
  EXPECT_EQ(b.count_up_to(0), 1u);
  EXPECT_EQ(b.count_up_to(3), 3u);  // 1, s, c
  EXPECT_EQ(b.size(), 3u);
}

TEST(Ball, GeodesicsHaveTheRecordedLength) {
  const auto& I = builtin(GroupId::I);
  const Ball b = enumerate_ball(I.extended, 30);
  for (auto id : b.ids()) {
    const GenWord w = b.geodesic(id);
    long long len = 0;
    for (int x : w) len += I.extended[static_cast<std::size_t>(x)].weight;
    ASSERT_EQ(len, b.length(id));
    ASSERT_TRUE(equal(b.element(id), I.extended.element(w)));
  }
}

TEST(Ball, ExtendingIsIdempotent) {
  const auto& H = builtin(GroupId::H);
  Ball a(H.standard), b(H.standard);
  a.extend_to(10);
  a.extend_to(25);
  b.extend_to(25);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.entry(a.ids()[i]).key, b.entry(b.ids()[i]).key);
    EXPECT_EQ(a.geodesic(a.ids()[i]), b.geodesic(b.ids()[i]));
  }
}

TEST(Ball, ThreadCountDoesNotChangeTheResult) {
  const auto& G = builtin(GroupId::G);
  BallOptions one, four;
  four.threads = 4;
  const Ball a = enumerate_ball(G.standard, 36, one);
  const Ball b = enumerate_ball(G.standard, 36, four);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.entry(a.ids()[i]).key, b.entry(b.ids()[i]).key);
    EXPECT_EQ(a.geodesic(a.ids()[i]), b.geodesic(b.ids()[i]));
    EXPECT_EQ(a.entry(a.ids()[i]).preds.size(), b.entry(b.ids()[i]).preds.size());
  }
}

TEST(Ball, BudgetIsEnforced) {
  BallOptions o;
  o.max_entries = 50;
  Ball b(builtin(GroupId::G).standard, o);
  EXPECT_THROW(b.extend_to(40), BudgetExceeded);
}

TEST(Growth, MonotoneAndStartsAtOne) {
  for (auto id : {GroupId::G, GroupId::H, GroupId::I}) {
    const auto s = growth_series(builtin(id).working_set(), 30);
    ASSERT_EQ(s.samples.front().gamma, 1u);
    EXPECT_FALSE(s.samples.front().rate);
    for (std::size_t i = 1; i < s.samples.size(); ++i)
      EXPECT_LE(s.samples[i - 1].gamma, s.samples[i].gamma);
  }
}

TEST(Geodesics, CountMatchesBruteForce) {
  const auto& G = builtin(GroupId::G);
  const Ball b = enumerate_ball(G.standard, 16);
  const auto words = oracle::all_words(oracle_gens("G"), 16);
  for (auto id : b.ids()) {
    const Element e = b.element(id);
    std::size_t expected = 0;
    for (const auto& w : words)
      if (w.weight == b.length(id) && equal(G.element(w.word), e)) ++expected;
    ASSERT_EQ(geodesic_words(b, id).words.size(), expected) << e.str();
  }
}

TEST(Geodesics, CapTruncates) {
  const auto& I = builtin(GroupId::I);
  const Ball b = enumerate_ball(I.standard, 20);
  std::size_t most = 0, at = 0;
  for (auto id : b.ids()) {
    const auto n = geodesic_words(b, id).words.size();
    if (n > most) most = n, at = id;
  }
  ASSERT_GT(most, 1u);
  const auto g = geodesic_words(b, at, {most - 1, false});
  EXPECT_TRUE(g.truncated);
  EXPECT_EQ(g.words.size(), most - 1);
}

TEST(Alternation, ExtendedSetAlwaysAlternates) {
  const Ball b = enumerate_ball(builtin(GroupId::I).extended, 30);
  EXPECT_TRUE(alternation_check(b).passed());
}

TEST(Stabilisers, Membership) {
  const auto& G = builtin(GroupId::G);
  EXPECT_TRUE(level_stabilizer_member(G.element("sasa"), 1));
  EXPECT_FALSE(level_stabilizer_member(G.element("sab"), 1));
  EXPECT_TRUE(level_stabilizer_member(G.element("b"), 1));
  EXPECT_FALSE(level_stabilizer_member(G.element("b"), 2));
  EXPECT_TRUE(level_stabilizer_member(G.element("c"), 2));
}

}  // namespace
}  // namespace selfsim
