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

// Built-in groups: Grigorchuk's group G, the model group H and the iterated
// monodromy group I of z^2 + i, with their generating sets and weights.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "selfsim/element_index.hpp"
#include "selfsim/generating_set.hpp"
#include "selfsim/report.hpp"
#include "selfsim/tree_automorphism.hpp"

namespace selfsim {

enum class GroupId { G, H, I };

// One row of the extended generator table of I: the element as a word in
// the standard letters and its claimed pair decomposition.
struct ExtendedRow {
  std::string name;
  std::string word;
  std::string left;
  std::string right;
};

struct NamedGroup {
  std::string name;
  TablePtr table;
  GeneratingSet standard;
  GeneratingSet extended;            // empty except for I
  std::vector<ExtendedRow> table_rows;  // the 16 rows for I
  int split_depth = 1;               // level of the splitting homomorphism used for growth

  // The set over which minimal-length words alternate (extended for I).
  const GeneratingSet& working_set() const { return extended.empty() ? standard : extended; }
  std::map<std::string, int> weights() const { return working_set().weights(); }
  Element element(std::string_view text) const { return Element(table, text); }
};

namespace detail {

inline GeneratorSpec gen(std::string name, Activity act, std::string l, std::string r) {
  return {std::move(name), act, std::move(l), std::move(r), std::nullopt};
}

// Alternating product of length n starting with `first` ("a" or "b").
inline std::string alternating(char first, int n) {
  std::string s;
  char c = first;
  for (int i = 0; i < n; ++i) {
    s.push_back(c);
    c = (c == 'a') ? 'b' : 'a';
  }
  return s;
}

inline NamedGroup make_G() {
  NamedGroup g;
  g.name = "G";
  g.table = RecursionTable::make(
      "G", {gen("s", Activity::swap, "", ""), gen("a", Activity::identity, "s", "b"),
            gen("b", Activity::identity, "s", "c"), gen("c", Activity::identity, "", "a")});
  const auto& t = *g.table;
  g.standard = GeneratingSet(g.table, {{"s", {t.letter("s")}, 3},
                                       {"a", {t.letter("a")}, 5},
                                       {"b", {t.letter("b")}, 4},
                                       {"c", {t.letter("c")}, 3}});
  return g;
}

inline NamedGroup make_H() {
  NamedGroup g;
  g.name = "H";
  g.table = RecursionTable::make("H", {gen("s", Activity::swap, "", ""),
                                       gen("a", Activity::identity, "s", "b"),
                                       gen("b", Activity::identity, "", "a")});
  const auto& t = *g.table;
  // c = ab is a derived element, not a table letter.
  g.standard = GeneratingSet(g.table, {{"s", {t.letter("s")}, 3},
                                       {"a", {t.letter("a")}, 5},
                                       {"b", {t.letter("b")}, 4},
                                       {"c", t.parse_word("ab"), 3}});
  return g;
}

inline NamedGroup make_I() {
  NamedGroup g;
  g.name = "I";
  g.split_depth = 3;
  g.table = RecursionTable::make("I", {gen("s", Activity::swap, "", ""),
                                       gen("a", Activity::identity, "s", "b"),
                                       gen("b", Activity::identity, "a", "")});
  const auto& t = *g.table;
  g.standard = GeneratingSet(g.table, {{"s", {t.letter("s")}, 3},
                                       {"a", {t.letter("a")}, 4},
                                       {"b", {t.letter("b")}, 4}});

  // Non-trivial elements of the dihedral group <a, b> of order 16. Weights are
  // word lengths over {s, a, b}; a8 = b8 appears once.
  std::vector<Generator> ext{{"s", {t.letter("s")}, 3}};
  for (char first : {'a', 'b'}) {
    for (int i = 1; i <= 8; ++i) {
      if (first == 'b' && i == 8) continue;
      std::string name(1, first);
      if (i > 1) name += std::to_string(i);
      ext.push_back({name, t.parse_word(alternating(first, i)), 4 * i});
    }
  }
  g.extended = GeneratingSet(g.table, std::move(ext));

  // Pair column of the published table.
  g.table_rows = {
      {"a1", "a", "s", "b"},
      {"a2", "ab", "sa", "b"},
      {"a3", "aba", "sas", "1"},
      {"a4", "abab", "sasa", "1"},
      {"a5", "ababa", "sasas", "b"},
      {"a6", "ababab", "sasasa", "b"},
      {"a7", "abababa", "sasasas", "1"},
      {"a8", "abababab", "sasasasa", "1"},
      {"b1", "b", "a", "1"},
      {"b2", "ba", "as", "b"},
      {"b3", "bab", "asa", "b"},
      {"b4", "baba", "asas", "1"},
      {"b5", "babab", "asasa", "1"},
      {"b6", "bababa", "asasas", "b"},
      {"b7", "bababab", "asasasa", "b"},
      {"b8", "babababa", "asasasas", "1"},
  };
  return g;
}

}  // namespace detail

inline const NamedGroup& builtin(GroupId id) {
  static const NamedGroup G = detail::make_G();
  static const NamedGroup H = detail::make_H();
  static const NamedGroup I = detail::make_I();
  switch (id) {
    case GroupId::G: return G;
    case GroupId::H: return H;
    case GroupId::I: return I;
  }
  throw PreconditionError("unknown group");
}

inline std::optional<GroupId> parse_group_id(std::string_view s) {
  if (s == "G") return GroupId::G;
  if (s == "H") return GroupId::H;
  if (s == "I") return GroupId::I;
  return std::nullopt;
}

inline const NamedGroup& builtin(std::string_view name) {
  auto id = parse_group_id(name);
  if (!id) throw PreconditionError("unknown built-in group '" + std::string(name) + "'");
  return builtin(*id);
}

// Smallest k in [1, cutoff] with a^k = 1, or nullopt ("exceeds cutoff").
inline std::optional<int> order(const Element& a, int cutoff = 256) {
  const auto& t = a.table();
  Word running;
  for (int k = 1; k <= cutoff; ++k) {
    running = t.reduce(concat(std::move(running), a.word()));
    if (t.word_portrait(running, ElementIndex::kDefaultKeyDepth).is_identity() &&
        t.trivial_word(running))
      return k;
  }
  return std::nullopt;
}

// Elements of the subgroup generated by `gens` (as words), enumerated by
// closure under right multiplication. Throws BudgetExceeded past `limit`.
inline std::vector<Word> subgroup_elements(const TablePtr& table, const std::vector<Word>& gens,
                                           std::size_t limit = 4096) {
  ElementIndex index(table);
  std::vector<Word> elems{Word{}};
  index.insert(index.key(Word{}), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const Word& g : gens) {
      Word w = table->reduce(concat(elems[i], g));
      auto key = index.key(w);
      if (index.find(key, w, [&](std::size_t id) { return elems[id]; })) continue;
      if (elems.size() >= limit)
        throw BudgetExceeded("subgroup exceeds " + std::to_string(limit) + " elements");
      index.insert(key, elems.size());
      elems.push_back(std::move(w));
    }
  }
  return elems;
}

namespace detail {

inline std::string order_text(std::optional<int> o) {
  return o ? std::to_string(*o) : std::string("exceeds cutoff");
}

// Checks <x, y> = D_n: both involutions, xy of order n, and exactly 2n elements.
inline void check_dihedral(Report& r, const NamedGroup& g, const std::string& x,
                           const std::string& y, int n) {
  const auto ex = g.element(x), ey = g.element(y);
  const std::string tag = "<" + x + "," + y + ">";
  r.add(tag + ": " + x + "^2 = 1", trivial(power(ex, 2)));
  r.add(tag + ": " + y + "^2 = 1", trivial(power(ey, 2)));
  auto o = order(compose(ex, ey));
  r.add(tag + ": order(" + x + y + ") = " + std::to_string(n), o && *o == n,
        "observed " + order_text(o));
  std::size_t size = 0;
  try {
    size = subgroup_elements(g.table, {ex.word(), ey.word()}).size();
  } catch (const BudgetExceeded&) {
  }
  r.add(tag + " has " + std::to_string(2 * n) + " elements (dihedral of order " +
            std::to_string(2 * n) + ")",
        size == static_cast<std::size_t>(2 * n), "observed " + std::to_string(size));
}

}  // namespace detail

// The finite structure statements for each built-in group.
inline Report verify_structure_lemmas(const NamedGroup& g) {
  Report r;
  r.name = "structure lemmas for " + g.name;
  auto E = [&](std::string_view w) { return g.element(w); };

  if (g.name == "G") {
    const std::vector<std::string> klein{"1", "a", "b", "c"};
    for (const auto& x : {"a", "b", "c"}) {
      r.add(std::string(x) + " != 1", !trivial(E(x)));
      r.add(std::string(x) + "^2 = 1", trivial(power(E(x), 2)));
    }
    r.add("a != b", !equal(E("a"), E("b")));
    r.add("a != c", !equal(E("a"), E("c")));
    r.add("b != c", !equal(E("b"), E("c")));
    r.add("ab = c", equal(E("ab"), E("c")));
    r.add("bc = a", equal(E("bc"), E("a")));
    r.add("ca = b", equal(E("ca"), E("b")));
    r.add("abc = 1", trivial(E("abc")));
    bool closed = true;
    for (const auto& x : klein)
      for (const auto& y : klein) {
        const auto p = compose(E(x), E(y));
        closed = closed && std::any_of(klein.begin(), klein.end(),
                                       [&](const std::string& z) { return equal(p, E(z)); });
      }
    r.add("{1,a,b,c} closed under multiplication", closed);
  } else if (g.name == "H") {
    const auto c = E("ab");
    r.add("a^2 = 1", trivial(power(E("a"), 2)));
    r.add("b^2 = 1", trivial(power(E("b"), 2)));
    r.add("(ab)^2 = 1", trivial(power(c, 2)));
    r.add("a, b, ab pairwise distinct and non-trivial",
          !trivial(E("a")) && !trivial(E("b")) && !trivial(c) && !equal(E("a"), E("b")));
    auto ob = order(E("sb"));
    r.add("order(sb) = 4", ob && *ob == 4, "observed " + detail::order_text(ob));
    auto oa = order(E("sa"));
    r.add("order(sa) = 8", oa && *oa == 8, "observed " + detail::order_text(oa));
    const auto sc = E("sab");
    int first_trivial = 0;
    for (int k = 1; k <= 64 && !first_trivial; ++k)
      if (trivial(power(sc, k))) first_trivial = k;
    r.add("(sc)^k != 1 for 1 <= k <= 64", first_trivial == 0,
          first_trivial ? "trivial at k=" + std::to_string(first_trivial) : "");
    r.add("(sc)^2 = (cs, sc)", is_pair(power(sc, 2), E("abs"), sc));
    bool replicate = true;
    std::string bad;
    for (int n = 1; n <= 8; ++n)
      if (!is_pair(power(sc, 2 * n), power(E("abs"), n), power(sc, n))) {
        replicate = false;
        bad += " n=" + std::to_string(n);
      }
    r.add("(sc)^(2n) = ((cs)^n, (sc)^n) for n <= 8", replicate, bad);
  } else if (g.name == "I") {
    r.add("a != 1", !trivial(E("a")));
    r.add("b != 1", !trivial(E("b")));
    detail::check_dihedral(r, g, "s", "b", 4);
    detail::check_dihedral(r, g, "s", "a", 8);
    detail::check_dihedral(r, g, "a", "b", 8);
  } else {
    throw PreconditionError("structure lemmas exist only for G, H and I");
  }
  return r;
}

// Checks every row of I's extended generator table against the recursion,
// and a8 = b8.
inline Report verify_extended_table(const NamedGroup& g) {
  if (g.table_rows.empty()) throw PreconditionError("group has no extended generator table");
  Report r;
  r.name = "extended generator table for " + g.name;
  for (const auto& row : g.table_rows) {
    const auto e = g.element(row.word);
    const bool ok = is_pair(e, g.element(row.left), g.element(row.right));
    auto [l, rr] = sections(e);
    r.add(row.name + " = " + row.word + " = (" + row.left + ", " + row.right + ")", ok,
          ok ? "" : "computed (" + l.str() + ", " + rr.str() + ")");
  }
  r.add("a8 = b8", equal(g.element("abababab"), g.element("babababa")));
  return r;
}

}  // namespace selfsim
