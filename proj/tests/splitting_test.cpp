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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "selfsim/splitting.hpp"

namespace selfsim {
namespace {

TEST(Split, RejectsElementsMovingTheLevel) {
  const auto& G = builtin(GroupId::G);
  LengthOracle oracle(G.standard);
  EXPECT_THROW(split(G.element("sa"), 1, oracle), PreconditionError);
  EXPECT_THROW(split(G.element("b"), 2, oracle), PreconditionError);
  EXPECT_NO_THROW(split(G.element("b"), 1, oracle));
}

TEST(Split, BlockExamples) {
  const auto& G = builtin(GroupId::G);
  LengthOracle oracle(G.standard);
  const auto ab = split(G.element("sasb"), 1, oracle);
  EXPECT_EQ(ab.input_length, 15);
  EXPECT_EQ(ab.parts_length_sum, 13);
  const auto aa = split(G.element("sasa"), 1, oracle);
  EXPECT_EQ(aa.input_length, 16);
  EXPECT_EQ(aa.parts_length_sum, 14);
  ASSERT_EQ(aa.parts.size(), 2u);
  EXPECT_TRUE(equal(aa.parts[0], G.element("bs")));
  EXPECT_TRUE(equal(aa.parts[1], G.element("sb")));
}

TEST(Split, PartsAreSectionsInVertexOrder) {
  const auto& I = builtin(GroupId::I);
  LengthOracle oracle(I.extended);
  oracle.ball().extend_to(40);
  const auto ids = stabilizer_ids(oracle.ball(), 40, 3);
  ASSERT_GT(ids.size(), 2u);
  const auto vs = level_vertices(3);
  for (auto id : ids) {
    const Element g = oracle.ball().element(id);
    const auto s = split(g, 3, oracle);
    ASSERT_EQ(s.parts.size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_TRUE(equal(s.parts[i], section_at(g, vs[i])));
    EXPECT_EQ(s.input_length, oracle.ball().length(id));
  }
}

// The splitting map is a homomorphism and is injective on the stabiliser.
TEST(Split, HomomorphismAndInjectivity) {
  const auto& G = builtin(GroupId::G);
  LengthOracle oracle(G.standard);
  oracle.ball().extend_to(24);
  std::vector<Element> stab;
  for (auto id : stabilizer_ids(oracle.ball(), 24, 1)) stab.push_back(oracle.ball().element(id));
  ASSERT_GT(stab.size(), 20u);
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, stab.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const Element& g = stab[pick(rng)];
    const Element& h = stab[pick(rng)];
    const auto sg = split(g, 1, oracle), sh = split(h, 1, oracle);
    const auto sgh = split(compose(g, h), 1, oracle);
    for (int i = 0; i < 2; ++i) ASSERT_TRUE(equal(sgh.parts[i], compose(sg.parts[i], sh.parts[i])));
  }
  for (std::size_t i = 0; i < stab.size(); ++i)
    for (std::size_t j = i + 1; j < stab.size(); ++j) {
      const auto a = split(stab[i], 1, oracle), b = split(stab[j], 1, oracle);
      ASSERT_FALSE(equal(a.parts[0], b.parts[0]) && equal(a.parts[1], b.parts[1]));
    }
}

TEST(Reduction, GrigorchukUpToTwentyEight) {
  ReductionStats stats;
  const Report r = verify_reduction_G(28, &stats);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(stats.violations, 0u);
  EXPECT_GT(stats.checked, 50u);
}

TEST(Reduction, TooStrictFactorFails) {
  ReductionStats stats;
  const Report r = verify_reduction(builtin(GroupId::G).standard, 20, Rational(1, 2), Rational(0),
                                    1, &stats);
  EXPECT_FALSE(r.passed());
  EXPECT_GT(stats.violations, 0u);
}

TEST(Letters, BadLettersOfI) {
  const auto s = classify_letters(builtin(GroupId::I));
  EXPECT_EQ(s.bad, (std::vector<std::string>{"a", "a2", "b2", "b3"}));
  EXPECT_EQ(s.worst_good, "b7");
  EXPECT_EQ(s.worst_good_ratio, Rational(29, 31));
  EXPECT_TRUE(verify_good_letter_bound(builtin(GroupId::I)).passed());
}

TEST(Letters, HandComputedSplits) {
  // b7 = (asasasa, b): 4*4 + 3*3 = 25 and 4, against 3 + 28.
  const auto& I = builtin(GroupId::I);
  LengthOracle oracle(I.extended);
  const auto b7 = split_letter(I.extended, *I.extended.index("b7"), oracle);
  EXPECT_EQ(b7.left, 25);
  EXPECT_EQ(b7.right, 4);
  EXPECT_EQ(b7.base, 31);
  // a = (s, b): 3 + 4 = 7 = 3 + 4, not a strict reduction.
  const auto a = split_letter(I.extended, *I.extended.index("a"), oracle);
  EXPECT_EQ(a.left + a.right, 7);
  EXPECT_FALSE(a.good);
  EXPECT_TRUE(good_by_nature(I, "a3"));
  EXPECT_FALSE(good_by_nature(I, "b3"));
  EXPECT_THROW(good_by_nature(I, "s"), PreconditionError);
  EXPECT_THROW(good_by_nature(I, "z"), PreconditionError);
}

TEST(BasicTool, GrigorchukValidates) {
  const auto c = check_basic_tool(builtin(GroupId::G).standard, 1, Rational(7, 8), Rational(1), 3, 32);
  EXPECT_TRUE(c.validates);
  EXPECT_EQ(c.proportion_observed, Rational(1));
  EXPECT_LE(c.eta_required, Rational(7, 8));
}

TEST(BasicTool, RequiredEtaIsSharp) {
  const auto& H = builtin(GroupId::H);
  const auto m = check_basic_tool(H.standard, 1, Rational(0), Rational(1, 2), 3, 30);
  ASSERT_LT(m.eta_required, Rational(1));
  EXPECT_TRUE(check_basic_tool(H.standard, 1, m.eta_required, Rational(1, 2), 3, 30).validates);
  if (m.eta_required > Rational(0)) {
    const Rational below = m.eta_required - Rational(1, 1000);
    EXPECT_FALSE(check_basic_tool(H.standard, 1, below, Rational(1, 2), 3, 30).validates);
  }
}

TEST(BasicTool, Preconditions) {
  const auto& G = builtin(GroupId::G).standard;
  EXPECT_THROW(check_basic_tool(G, 1, Rational(1), Rational(1), 3, 10), PreconditionError);
  EXPECT_THROW(check_basic_tool(G, 1, Rational(1, 2), Rational(0), 3, 10), PreconditionError);
  EXPECT_THROW(check_basic_tool(G, 1, Rational(1, 2), Rational(1), -1, 10), PreconditionError);
}

TEST(Rationals, Parse) {
  EXPECT_EQ(parse_rational("7/8"), Rational(7, 8));
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_THROW(parse_rational("x"), PreconditionError);
  EXPECT_THROW(parse_rational("1/0"), PreconditionError);
  EXPECT_EQ(to_string(Rational(6, 8)), "3/4");
}

}  // namespace
}  // namespace selfsim
