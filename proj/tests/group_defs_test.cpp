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

#include <gtest/gtest.h>

#include "selfsim/group_defs.hpp"

namespace selfsim {
namespace {

TEST(Builtins, Weights) {
  EXPECT_EQ(builtin(GroupId::G).weights(),
            (std::map<std::string, int>{{"s", 3}, {"a", 5}, {"b", 4}, {"c", 3}}));
  EXPECT_EQ(builtin(GroupId::H).standard.weights(),
            (std::map<std::string, int>{{"s", 3}, {"a", 5}, {"b", 4}, {"c", 3}}));
  EXPECT_EQ(builtin(GroupId::I).standard.weights(),
            (std::map<std::string, int>{{"s", 3}, {"a", 4}, {"b", 4}}));
}

TEST(Builtins, ExtendedWeightsAreWordLengths) {
  const auto& I = builtin(GroupId::I);
  EXPECT_EQ(I.extended.size(), 16u);
  for (std::size_t i = 0; i < I.extended.size(); ++i) {
    const auto& g = I.extended[i];
    EXPECT_EQ(g.weight, I.standard.letter_weight(g.word)) << g.name;
  }
  EXPECT_EQ(I.extended[*I.extended.index("a8")].weight, 32);
  EXPECT_FALSE(I.extended.index("b8"));
  EXPECT_FALSE(I.extended.index("c"));
}

TEST(Builtins, DefiningSections) {
  const auto& H = builtin(GroupId::H);
  EXPECT_TRUE(is_pair(H.element("b"), H.element(""), H.element("a")));
  const auto& G = builtin(GroupId::G);
  EXPECT_TRUE(is_pair(G.element("c"), G.element(""), G.element("a")));
  EXPECT_EQ(activity(G.element("s")), Activity::swap);
}

TEST(Builtins, CIsDerivedInH) {
  const auto& H = builtin(GroupId::H);
  EXPECT_FALSE(H.table->find("c"));
  EXPECT_EQ(H.standard[*H.standard.index("c")].word, H.table->parse_word("ab"));
}

TEST(Builtins, LookupByName) {
  EXPECT_EQ(&builtin("I"), &builtin(GroupId::I));
  EXPECT_THROW(builtin("K"), PreconditionError);
}

TEST(Lemmas, AllBuiltinsPass) {
  for (auto id : {GroupId::G, GroupId::H, GroupId::I}) {
    const Report r = verify_structure_lemmas(builtin(id));
    for (const auto& c : r.checks) EXPECT_TRUE(c.ok) << r.name << ": " << c.label << " " << c.detail;
    EXPECT_GT(r.checks.size(), 3u);
  }
}

TEST(Lemmas, ExtendedTablePasses) {
  const Report r = verify_extended_table(builtin(GroupId::I));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks.size(), 17u);
  EXPECT_THROW(verify_extended_table(builtin(GroupId::G)), PreconditionError);
}

TEST(Orders, KnownValues) {
  const auto& H = builtin(GroupId::H);
  EXPECT_EQ(order(H.element("sb")), 4);
  EXPECT_EQ(order(H.element("sa")), 8);
  EXPECT_EQ(order(H.element("sab"), 64), std::nullopt);
  const auto& I = builtin(GroupId::I);
  EXPECT_EQ(order(I.element("sb")), 4);
  EXPECT_EQ(order(I.element("sa")), 8);
  EXPECT_EQ(order(I.element("ab")), 8);
  EXPECT_EQ(order(builtin(GroupId::G).element("a")), 2);
  EXPECT_EQ(order(builtin(GroupId::G).element("ab")), 2);
}

TEST(Orders, OddPowersOfScSwapTheRoot) {
  const auto& H = builtin(GroupId::H);
  for (int k = 1; k <= 63; k += 2)
    EXPECT_EQ(activity(power(H.element("sab"), k)), Activity::swap) << k;
}

TEST(Subgroups, DihedralSizes) {
  const auto& I = builtin(GroupId::I);
  const auto& t = *I.table;
  EXPECT_EQ(subgroup_elements(I.table, {t.parse_word("a"), t.parse_word("b")}, 64).size(), 16u);
  EXPECT_EQ(subgroup_elements(I.table, {t.parse_word("s"), t.parse_word("b")}, 64).size(), 8u);
  EXPECT_EQ(subgroup_elements(I.table, {t.parse_word("s"), t.parse_word("a")}, 64).size(), 16u);
  EXPECT_THROW(subgroup_elements(I.table, {t.parse_word("s"), t.parse_word("a")}, 10),
               BudgetExceeded);
}

}  // namespace
}  // namespace selfsim
