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

#include <string>

#include <gtest/gtest.h>

#include "selfsim/metric.hpp"
#include "selfsim/recursion_file.hpp"

#ifndef SELFSIM_SAMPLES
#define SELFSIM_SAMPLES "samples"
#endif

namespace selfsim {
namespace {

TEST(RecursionFile, ParsesGrigorchukLikeTheBuiltin) {
  const NamedGroup g = load_recursion_file(SELFSIM_SAMPLES "/grigorchuk.rec");
  const auto& G = builtin(GroupId::G);
  EXPECT_EQ(g.name, "grigorchuk");
  EXPECT_EQ(g.standard.weights(), G.standard.weights());
  for (const char* x : {"s", "a", "b", "c"})
    EXPECT_EQ(portrait(g.element(x), 8), portrait(G.element(x), 8)) << x;
  const auto a = growth_series(g.standard, 30), b = growth_series(G.standard, 30);
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].gamma, b.samples[i].gamma);
}

TEST(RecursionFile, OdometerHasInfiniteOrder) {
  const NamedGroup g = load_recursion_file(SELFSIM_SAMPLES "/adding_machine.rec");
  EXPECT_EQ(order(g.element("t"), 64), std::nullopt);
  EXPECT_TRUE(trivial(g.element("tT")));
  EXPECT_EQ(g.standard.weights().at("t"), 1);
  // t^(2^k) fixes exactly k levels.
  EXPECT_TRUE(level_stabilizer_member(power(g.element("t"), 8), 3));
  EXPECT_FALSE(level_stabilizer_member(power(g.element("t"), 8), 4));
}

TEST(RecursionFile, BracketedSwapKeyword) {
  const NamedGroup g = load_recursion_file(SELFSIM_SAMPLES "/basilica.rec");
  EXPECT_EQ(activity(g.element("v")), Activity::swap);
  EXPECT_EQ(activity(g.element("u")), Activity::identity);
  EXPECT_FALSE(trivial(g.element("uv")));
}

TEST(RecursionFile, CommentsBlankLinesAndIdentity) {
  const NamedGroup g = parse_recursion("# x\n\n  s = ( 1 , 1 ) swap  # root\nx = (s, 1)\n", "t");
  EXPECT_TRUE(is_pair(g.element("x"), g.element("s"), g.element("")));
}

TEST(RecursionFile, ErrorsCarryLineNumbers) {
  auto line_of = [](const char* text) {
    try {
      parse_recursion(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("s = (1, 1) swap\na = s, b\n"), 2u);
  EXPECT_EQ(line_of("s = (1, 1) swap\n\na = (s, b) twist\n"), 3u);
  EXPECT_EQ(line_of("s = (1, 1) swap\ns = (1, 1)\n"), 2u);
  EXPECT_EQ(line_of("inverse q = q\n"), 1u);
  EXPECT_EQ(line_of("s = (1, 1) swap\nweight s = -2\n"), 2u);
  EXPECT_EQ(line_of("s = (1, 1) swap\nweight s = 2x\n"), 2u);
  EXPECT_EQ(line_of("s (1, 1)\n"), 1u);
  EXPECT_THROW(parse_recursion("# nothing\n"), ParseError);
  EXPECT_THROW(parse_recursion("a = (b, 1)\n"), ParseError);          // undeclared letter
  EXPECT_THROW(parse_recursion("t = (1, t) swap\n"), ParseError);     // not an involution
  EXPECT_THROW(load_recursion_file("/nonexistent/x.rec"), ParseError);
}

TEST(RecursionFile, SelectorResolvesBuiltinsAndFiles) {
  std::optional<NamedGroup> storage;
  EXPECT_EQ(&select_group("H", storage), &builtin(GroupId::H));
  EXPECT_FALSE(storage);
  const auto& g = select_group("file:" SELFSIM_SAMPLES "/img_z2_plus_i.rec", storage);
  EXPECT_TRUE(storage);
  EXPECT_EQ(g.standard.weights(), builtin(GroupId::I).standard.weights());
  EXPECT_THROW(select_group("Q", storage), PreconditionError);
}

}  // namespace
}  // namespace selfsim
