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

// Alternating words, length-reducing block patterns and the counting of
// epsilon-bad words and elements for H and I.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "selfsim/group_defs.hpp"
#include "selfsim/metric.hpp"
#include "selfsim/report.hpp"
#include "selfsim/splitting.hpp"

namespace selfsim {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Alternating words
// ---------------------------------------------------------------------------

// (s) g1 s g2 ... s gm (s). An empty letter list with both flags set is "s".
struct AlternatingWord {
  bool starts_with_swap = false;
  bool ends_with_swap = false;
  std::vector<int> letters;  // generator indices; never the swap

  std::size_t size() const { return letters.size(); }
  std::size_t swap_count() const {
    if (letters.empty()) return starts_with_swap || ends_with_swap ? 1 : 0;
    return letters.size() - 1 + starts_with_swap + ends_with_swap;
  }
  bool even() const { return swap_count() % 2 == 0; }
  friend bool operator==(const AlternatingWord&, const AlternatingWord&) = default;
};

inline int swap_generator(const GeneratingSet& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens.is_swap(static_cast<int>(i))) return static_cast<int>(i);
  throw PreconditionError("generating set has no root swap");
}

inline GenWord expand(const GeneratingSet& gens, const AlternatingWord& w) {
  const int s = swap_generator(gens);
  if (w.letters.empty()) return w.starts_with_swap || w.ends_with_swap ? GenWord{s} : GenWord{};
  GenWord out;
  if (w.starts_with_swap) out.push_back(s);
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out.push_back(s);
    out.push_back(w.letters[i]);
  }
  if (w.ends_with_swap) out.push_back(s);
  return out;
}

inline AlternatingWord to_alternating(const GeneratingSet& gens, const GenWord& w) {
  if (!gens.alternating(w)) throw PreconditionError("word is not alternating: " + gens.format(w));
  AlternatingWord out;
  if (w.empty()) return out;
  out.starts_with_swap = gens.is_swap(w.front());
  out.ends_with_swap = gens.is_swap(w.back());
  for (int g : w)
    if (!gens.is_swap(g)) out.letters.push_back(g);
  return out;
}

inline std::string format(const GeneratingSet& gens, const AlternatingWord& w) {
  const GenWord g = expand(gens, w);
  if (g.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? " " : "") + gens[static_cast<std::size_t>(g[i])].name;
  return s;
}

// Rewrites a table word as an alternating word: swaps cancel in pairs and
// each maximal run of non-swap letters is replaced by the generator equal
// to it. Every run must evaluate to 1 or to a generator.
class AlternatingForm {
 public:
  explicit AlternatingForm(const GeneratingSet& gens) : gens_(&gens) {
    const int s = swap_generator(gens);
    swap_letter_ = gens[static_cast<std::size_t>(s)].word.front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens.is_swap(static_cast<int>(i))) continue;
      keys_.emplace(gens.table().word_portrait(gens[i].word, kKeyDepth), static_cast<int>(i));
    }
  }

  AlternatingWord operator()(const Word& w) const {
    struct Tok {
      bool swap;
      Word run;
    };
    std::vector<Tok> st;
    auto close_run = [&] {
      if (!st.empty() && !st.back().swap && is_identity(st.back().run)) st.pop_back();
    };
    for (Letter x : w) {
      if (x == swap_letter_) {
        close_run();
        if (!st.empty() && st.back().swap) st.pop_back();
        else st.push_back({true, {}});
      } else if (!st.empty() && !st.back().swap) {
        st.back().run.push_back(x);
      } else {
        st.push_back({false, {x}});
      }
    }
    close_run();
    AlternatingWord out;
    if (st.empty()) return out;
    out.starts_with_swap = st.front().swap;
    out.ends_with_swap = st.back().swap;
    for (const auto& t : st)
      if (!t.swap) out.letters.push_back(letter_for(t.run));
    return out;
  }

  AlternatingWord operator()(const Element& e) const { return (*this)(e.word()); }

 private:
  static constexpr int kKeyDepth = 8;

  bool is_identity(const Word& run) const {
    const auto& t = gens_->table();
    return t.word_portrait(run, kKeyDepth).is_identity() && t.trivial_word(run);
  }

  int letter_for(const Word& run) const {
    const auto& t = gens_->table();
    auto [lo, hi] = keys_.equal_range(t.word_portrait(run, kKeyDepth));
    for (auto it = lo; it != hi; ++it) {
      const auto& g = (*gens_)[static_cast<std::size_t>(it->second)].word;
      if (t.trivial_word(t.reduce(concat(run, t.inverse(g))))) return it->second;
    }
    throw PreconditionError("run '" + t.format_word(run) + "' is not a generator");
  }

  const GeneratingSet* gens_;
  Letter swap_letter_;
  std::multimap<Portrait, int> keys_;
};

// ---------------------------------------------------------------------------
// Block templates
// ---------------------------------------------------------------------------

enum class PatternId { P1, P2, A, B, C, D };

inline std::string to_string(PatternId id) {
  switch (id) {
    case PatternId::P1: return "P1";
    case PatternId::P2: return "P2";
    case PatternId::A: return "A";
    case PatternId::B: return "B";
    case PatternId::C: return "C";
    case PatternId::D: return "D";
  }
  return "?";
}

// "_" stands for an arbitrary bad letter.
struct PatternTemplate {
  PatternId id;
  std::string text;
  bool supplementary = false;
};

// `standard`: the twelve published blocks. `completed` adds two blocks of the
// C kind covering the pair b3 s _ s a2, which the twelve leave open.
enum class Catalog { standard, completed };

inline std::string to_string(Catalog c) { return c == Catalog::standard ? "standard" : "completed"; }

inline const std::vector<PatternTemplate>& block_templates(Catalog c) {
  static const std::vector<PatternTemplate> standard{
      {PatternId::A, "a s _ s a"},
      {PatternId::A, "a s _ s a2"},
      {PatternId::A, "b2 s _ s a"},
      {PatternId::A, "b2 s _ s a2"},
      {PatternId::B, "a2 s _ s b2"},
      {PatternId::B, "a2 s _ s b3"},
      {PatternId::B, "b3 s _ s b2"},
      {PatternId::B, "b3 s _ s b3"},
      {PatternId::C, "s _ s b2 s _ s b3"},
      {PatternId::C, "b2 s _ s b3 s _ s"},
      {PatternId::D, "_ s a2 s _ s a s _"},
      {PatternId::D, "_ s a s _ s b2 s _"},
  };
  static const std::vector<PatternTemplate> completed = [] {
    auto v = standard;
    v.push_back({PatternId::C, "s _ s b3 s _ s a2", true});
    v.push_back({PatternId::C, "b3 s _ s a2 s _ s", true});
    return v;
  }();
  return c == Catalog::standard ? standard : completed;
}

struct PatternMatch {
  PatternId pattern_id;
  std::size_t template_index = 0;
  std::size_t position = 0;  // index of the first non-swap letter
  std::size_t letter_count = 0;
  std::string witness;
};

namespace detail {

inline constexpr int kSwapTok = -1;
inline constexpr int kSlotTok = -2;

inline std::vector<int> tokens(const GeneratingSet& gens, const AlternatingWord& w) {
  std::vector<int> t;
  for (int g : expand(gens, w)) t.push_back(gens.is_swap(g) ? kSwapTok : g);
  return t;
}

}  // namespace detail

// Splits into bad and good letters by the length test on the working
// generating set, and finds good blocks when the alphabet has the letters
// the templates use.
class WordClassifier {
 public:
  explicit WordClassifier(const NamedGroup& group, Catalog catalog = Catalog::completed)
      : group_(&group), gens_(&group.working_set()), catalog_(catalog) {
    const auto summary = classify_letters(group);
    bad_.assign(gens_->size(), false);
    for (const auto& name : summary.bad) {
      const int i = *gens_->index(name);
      bad_[static_cast<std::size_t>(i)] = true;
      bad_list_.push_back(i);
    }
    const auto& ts = block_templates(catalog);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      std::vector<int> toks;
      bool ok = true;
      std::size_t start = 0;
      const std::string& text = ts[k].text;
      while (start < text.size()) {
        auto end = text.find(' ', start);
        if (end == std::string::npos) end = text.size();
        const std::string tok = text.substr(start, end - start);
        start = end + 1;
        if (tok == "s") toks.push_back(detail::kSwapTok);
        else if (tok == "_") toks.push_back(detail::kSlotTok);
        else if (auto i = gens_->index(tok)) toks.push_back(*i);
        else ok = false;
      }
      if (!ok) {
        compiled_.clear();
        break;
      }
      compiled_.push_back({k, std::move(toks)});
    }
  }

  const NamedGroup& group() const { return *group_; }
  const GeneratingSet& generating_set() const { return *gens_; }
  Catalog catalog() const { return catalog_; }
  bool has_blocks() const { return !compiled_.empty(); }
  const std::vector<int>& bad_letters() const { return bad_list_; }
  bool bad_by_nature(int g) const { return bad_.at(static_cast<std::size_t>(g)); }

  // Every occurrence of every template, overlaps included.
  std::vector<PatternMatch> find_good_blocks(const AlternatingWord& w) const {
    std::vector<PatternMatch> out;
    const auto toks = detail::tokens(*gens_, w);
    std::vector<std::size_t> letter_index(toks.size());
    for (std::size_t i = 0, n = 0; i < toks.size(); ++i) {
      letter_index[i] = n;
      if (toks[i] != detail::kSwapTok) ++n;
    }
    const auto& ts = block_templates(catalog_);
    for (const auto& c : compiled_) {
      for (std::size_t p = 0; p + c.toks.size() <= toks.size(); ++p) {
        if (!matches_at(c.toks, toks, p)) continue;
        PatternMatch m;
        m.pattern_id = ts[c.index].id;
        m.template_index = c.index;
        std::size_t first = p;
        while (toks[first] == detail::kSwapTok) ++first;
        m.position = letter_index[first];
        std::string witness;
        for (std::size_t i = p; i < p + c.toks.size(); ++i) {
          witness += (i > p ? " " : "") + (toks[i] == detail::kSwapTok
                                               ? std::string("s")
                                               : (*gens_)[static_cast<std::size_t>(toks[i])].name);
          if (toks[i] != detail::kSwapTok) ++m.letter_count;
        }
        m.witness = std::move(witness);
        out.push_back(std::move(m));
      }
    }
    std::sort(out.begin(), out.end(), [](const PatternMatch& x, const PatternMatch& y) {
      return std::tie(x.position, x.template_index) < std::tie(y.position, y.template_index);
    });
    return out;
  }

  // Token-level test used by the census: does `toks` contain any block?
  bool has_block(const std::vector<int>& toks) const {
    for (const auto& c : compiled_)
      for (std::size_t p = 0; p + c.toks.size() <= toks.size(); ++p)
        if (matches_at(c.toks, toks, p)) return true;
    return false;
  }

  // Per letter: good by nature or covered by a good block.
  std::vector<bool> good_letters(const AlternatingWord& w) const {
    std::vector<bool> good(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) good[i] = !bad_by_nature(w.letters[i]);
    for (const auto& m : find_good_blocks(w))
      for (std::size_t i = m.position; i < m.position + m.letter_count; ++i) good[i] = true;
    return good;
  }

  // Bad iff at most epsilon * m of the m letters are good. The empty word is
  // good by convention.
  bool is_bad(const AlternatingWord& w, Rational epsilon) const {
    check_epsilon(epsilon);
    if (w.letters.empty()) return false;
    const auto good = good_letters(w);
    const auto n = static_cast<long long>(std::count(good.begin(), good.end(), true));
    return Rational(n) <= epsilon * Rational(static_cast<long long>(w.size()));
  }

  static void check_epsilon(Rational epsilon) {
    if (epsilon <= Rational(0) || epsilon >= Rational(1))
      throw PreconditionError("epsilon must lie in (0, 1)");
  }

 private:
  struct Compiled {
    std::size_t index;
    std::vector<int> toks;
  };

  bool matches_at(const std::vector<int>& pat, const std::vector<int>& toks, std::size_t p) const {
    for (std::size_t i = 0; i < pat.size(); ++i) {
      const int t = toks[p + i];
      if (pat[i] == detail::kSlotTok) {
        if (t == detail::kSwapTok || !bad_by_nature(t)) return false;
      } else if (pat[i] != t) {
        return false;
      }
    }
    return true;
  }

  const NamedGroup* group_;
  const GeneratingSet* gens_;
  Catalog catalog_;
  std::vector<bool> bad_;
  std::vector<int> bad_list_;
  std::vector<Compiled> compiled_;
};

enum class WordClass { good, bad };

inline WordClass classify_word(const NamedGroup& group, const AlternatingWord& w, Rational epsilon,
                               Catalog catalog = Catalog::completed) {
  return WordClassifier(group, catalog).is_bad(w, epsilon) ? WordClass::bad : WordClass::good;
}

inline std::vector<PatternMatch> find_good_blocks(const NamedGroup& group, const AlternatingWord& w,
                                                  Catalog catalog = Catalog::completed) {
  return WordClassifier(group, catalog).find_good_blocks(w);
}

// ---------------------------------------------------------------------------
// Symbolic verification of the patterns
// ---------------------------------------------------------------------------

namespace detail {

inline GenWord instantiate(const GeneratingSet& gens, const std::string& text, int slot) {
  GenWord w;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find(' ', start);
    if (end == std::string::npos) end = text.size();
    const std::string tok = text.substr(start, end - start);
    start = end + 1;
    if (tok == "_") w.push_back(slot);
    else w.push_back(*gens.index(tok));
  }
  return w;
}

// x s <g> s y with x, y optional non-swap letters.
inline bool framed_letter(const GeneratingSet& gens, const AlternatingWord& w, int g) {
  const auto t = tokens(gens, w);
  std::size_t b = 0, e = t.size();
  if (b < e && t[b] != kSwapTok) ++b;
  if (e > b && t[e - 1] != kSwapTok) --e;
  return e - b == 3 && t[b] == kSwapTok && t[b + 1] == g && t[b + 2] == kSwapTok;
}

}  // namespace detail

// Checks P1, P2 and every block template over the four bad letters: the
// claimed sections are reproduced exactly, and C and D reach a good
// generator after one more split.
inline Report verify_patterns(Catalog catalog = Catalog::completed) {
  const auto& I = builtin(GroupId::I);
  const auto& gens = I.extended;
  const auto& t = *I.table;
  const WordClassifier cls(I, catalog);
  const AlternatingForm form(gens);
  const int b = *gens.index("b"), a3 = *gens.index("a3");
  auto el = [&](const Word& w) { return Element(I.table, w); };
  auto left = [&](const Word& w) { return t.reduce(t.word_sections(w).first); };
  auto right = [&](const Word& w) { return t.reduce(t.word_sections(w).second); };
  auto show = [&](const AlternatingWord& w) { return format(gens, w); };
  auto named = [&](std::initializer_list<const char*> texts) {
    std::vector<Element> v;
    for (auto s : texts) v.push_back(el(gens.expand(gens.parse(s))));
    return v;
  };
  auto equals_one_of = [&](const Word& w, const std::vector<Element>& set) {
    return std::any_of(set.begin(), set.end(), [&](const Element& e) { return equal(el(w), e); });
  };
  // The alternating form matches an A block exactly, with a bad middle letter.
  auto is_A_instance = [&](const AlternatingWord& w) {
    if (w.starts_with_swap || w.ends_with_swap || w.size() != 3) return false;
    for (const auto& tp : block_templates(Catalog::standard)) {
      if (tp.id != PatternId::A) continue;
      const auto inst = detail::instantiate(gens, tp.text, w.letters[1]);
      if (cls.bad_by_nature(w.letters[1]) && inst == expand(gens, w)) return true;
    }
    return false;
  };

  Report r;
  r.name = "block patterns (" + to_string(catalog) + " catalog)";
  const auto& bad = cls.bad_letters();
  for (int slot : bad) {
    const std::string sl = gens[static_cast<std::size_t>(slot)].name;
    const Word sw = gens[static_cast<std::size_t>(slot)].word;
    r.add("right section of " + sl + " is b", equal(el(right(sw)), el(gens.expand({b}))));

    const auto p1 = form(left(gens.expand(detail::instantiate(gens, "a s _ s a", slot))));
    r.add("P1 a s " + sl + " s a -> s b s", show(p1) == "s b s", show(p1));

    const Word p2 = left(gens.expand(detail::instantiate(gens, "b s _ s b", slot)));
    r.add("P2 b s " + sl + " s b -> a3", show(form(p2)) == "a3", show(form(p2)));
    // Neighbouring letters contribute their right sections, 1 or b.
    for (const char* x : {"", "b "})
      for (const char* y : {"", " b"}) {
        const auto merged = form(concat(concat(t.parse_word(x), p2), t.parse_word(y)));
        const bool ok = merged.size() == 1 && !merged.starts_with_swap &&
                        !merged.ends_with_swap && !cls.bad_by_nature(merged.letters[0]);
        r.add(std::string("P2 ") + x + "[" + sl + "]" + y + " stays good", ok, show(merged));
      }
  }

  const auto& ts = block_templates(catalog);
  for (const auto& tp : ts) {
    for (int slot : bad) {
      const GenWord gw = detail::instantiate(gens, tp.text, slot);
      const Word w = gens.expand(gw);
      const std::string label = to_string(tp.id) + (tp.supplementary ? "+" : "") + " " +
                                gens.format(gw);
      const auto wa = to_alternating(gens, gw);
      if (!wa.even()) {
        r.add(label + " is even", false);
        continue;
      }
      switch (tp.id) {
        case PatternId::A: {
          const auto f = form(left(w));
          r.add(label + " -> x s b s y", detail::framed_letter(gens, f, b), show(f));
          break;
        }
        case PatternId::B: {
          const auto f = form(left(w));
          r.add(label + " -> x s a3 s y", detail::framed_letter(gens, f, a3), show(f));
          break;
        }
        case PatternId::C: {
          const Word l = left(w);
          const auto f = form(l);
          const auto claimed = tp.supplementary ? named({"b2 s a2 s a", "a s a2 s a2"})
                                                : named({"b2 s b2 s a", "a s b2 s a2"});
          const auto g = form(left(gens.expand(expand(gens, f))));
          r.add(label + " -> " + show(f), equals_one_of(l, claimed) && is_A_instance(f) &&
                                              detail::framed_letter(gens, g, b),
                "second split " + show(g));
          break;
        }
        case PatternId::D: {
          const Word rw = right(w);
          const auto f = form(rw);
          const auto g = form(left(gens.expand(expand(gens, f))));
          r.add(label + " -> " + show(f),
                equals_one_of(rw, named({"b s a2 s b", "b s b2 s b"})) && show(g) == "a3",
                "second split " + show(g));
          break;
        }
        default:
          break;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bad strings
// ---------------------------------------------------------------------------

struct BadStringCensus {
  Catalog catalog = Catalog::completed;
  std::vector<std::pair<int, std::size_t>> counts;  // (k, |S_k|)
  std::size_t bound_observed = 0;
  // Pairs (x, y) of blocks x s _ s y with at least two letters on both
  // sides, over all surviving words.
  std::set<std::pair<std::string, std::string>> interior_pairs;
  // Largest number of letters at either end that must be dropped so that
  // letters four apart (eight symbols apart) agree.
  std::size_t period_margin = 0;
  std::string period_structure;
};

namespace detail {

// Least margin m such that w[i] == w[i + 4] whenever m <= i and i + 4 < k - m.
inline std::size_t period_margin(const std::vector<int>& w) {
  const std::size_t k = w.size();
  for (std::size_t m = 0;; ++m) {
    bool ok = true;
    for (std::size_t i = m; i + 4 + m < k && ok; ++i) ok = w[i] == w[i + 4];
    if (ok) return m;
  }
}

}  // namespace detail

// Alternating words whose letters are all bad and which contain no good
// block, with k = 1..max_k letters and any of the four swap boundaries.
inline BadStringCensus bad_strings_census(int max_k, Catalog catalog = Catalog::completed,
                                          std::size_t budget = 50'000'000) {
  if (max_k < 1) throw PreconditionError("max_k must be at least 1");
  const auto& I = builtin(GroupId::I);
  const WordClassifier cls(I, catalog);
  const auto& gens = I.extended;
  const auto& bad = cls.bad_letters();

  BadStringCensus c;
  c.catalog = catalog;
  std::vector<std::size_t> count(static_cast<std::size_t>(max_k) + 1, 0);
  std::size_t visited = 0;
  std::vector<int> letters;
  std::vector<int> toks;  // letters joined by swaps, without boundary swaps

  auto record = [&](bool s0, bool s1) {
    std::vector<int> full;
    if (s0) full.push_back(detail::kSwapTok);
    full.insert(full.end(), toks.begin(), toks.end());
    if (s1) full.push_back(detail::kSwapTok);
    if (cls.has_block(full)) return;
    ++count[letters.size()];
    const std::size_t k = letters.size();
    for (std::size_t i = 2; i + 4 < k; ++i)
      c.interior_pairs.emplace(gens[static_cast<std::size_t>(letters[i])].name,
                               gens[static_cast<std::size_t>(letters[i + 2])].name);
    c.period_margin = std::max(c.period_margin, detail::period_margin(letters));
  };

  // Every longer word contains "letters s" as a factor, so a block there
  // rules out all extensions (but not the word itself).
  auto dfs = [&](auto&& self) -> void {
    if (++visited > budget) throw BudgetExceeded("bad strings census", visited);
    for (bool s0 : {false, true})
      for (bool s1 : {false, true}) record(s0, s1);
    if (static_cast<int>(letters.size()) == max_k) return;
    auto probe = toks;
    probe.push_back(detail::kSwapTok);
    if (cls.has_block(probe)) return;
    for (int x : bad) {
      toks.push_back(detail::kSwapTok);
      toks.push_back(x);
      letters.push_back(x);
      self(self);
      letters.pop_back();
      toks.pop_back();
      toks.pop_back();
    }
  };
  for (int x : bad) {
    letters = {x};
    toks = {x};
    dfs(dfs);
  }

  for (int k = 1; k <= max_k; ++k) {
    c.counts.emplace_back(k, count[static_cast<std::size_t>(k)]);
    c.bound_observed = std::max(c.bound_observed, count[static_cast<std::size_t>(k)]);
  }
  c.period_structure = "letters four apart (symbols eight apart) agree except within " +
                       std::to_string(c.period_margin) + " letters of either end";
  return c;
}

// The adjacent-pair set left open by the twelve published blocks.
inline std::set<std::pair<std::string, std::string>> expected_surviving_pairs() {
  return {{"a", "b3"}, {"a2", "a2"}, {"b2", "b2"}, {"b3", "a"}};
}

// No growth at the end of the enumerated range: the largest |S_k| over the
// last quarter does not exceed the largest over the quarter before it.
inline bool census_bounded(const BadStringCensus& c) {
  const std::size_t n = c.counts.size();
  if (n < 8) return false;
  auto max_over = [&](std::size_t from, std::size_t to) {
    std::size_t m = 0;
    for (std::size_t i = from; i < to; ++i) m = std::max(m, c.counts[i].second);
    return m;
  };
  return max_over(3 * n / 4, n) <= max_over(n / 2, 3 * n / 4);
}

inline Report verify_census(const BadStringCensus& c) {
  Report r;
  r.name = "bad strings census (" + to_string(c.catalog) + " catalog)";
  r.add("|S_1| = 16", !c.counts.empty() && c.counts.front().second == 16,
        c.counts.empty() ? "" : std::to_string(c.counts.front().second));
  std::string series;
  for (const auto& [k, n] : c.counts) series += (series.empty() ? "" : " ") + std::to_string(n);
  r.add("|S_k| bounded", census_bounded(c), "observed max " + std::to_string(c.bound_observed) +
                                                 "; counts " + series);
  std::string pairs;
  for (const auto& [x, y] : c.interior_pairs) pairs += (pairs.empty() ? "" : ", ") + x + " s _ s " + y;
  r.add("surviving blocks are the four open pairs", c.interior_pairs == expected_surviving_pairs(),
        pairs);
  r.add("period eight away from the ends", c.period_margin <= 4, c.period_structure);
  return r;
}

// ---------------------------------------------------------------------------
// Counting bounds
// ---------------------------------------------------------------------------

inline long long floor_of(Rational q) {
  long long f = q.numerator() / q.denominator();
  if (q.numerator() < 0 && f * q.denominator() != q.numerator()) --f;
  return f;
}

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  BigInt out = 1;
  for (long long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

inline BigInt ipow(BigInt base, long long e) {
  BigInt out = 1;
  while (e-- > 0) out *= base;
  return out;
}

// Upper bound on the number of epsilon-bad alternating words with n letters:
// 2 C(n, f) 3^f for H, 2 C(n, f) 15^f B^(1+f) for I, with f = floor(eps n).
inline BigInt bad_word_bound(GroupId group, long long n, Rational epsilon,
                             std::optional<std::size_t> census_bound = std::nullopt) {
  if (n < 0) throw PreconditionError("n must be non-negative");
  if (epsilon <= Rational(0) || epsilon >= Rational(1))
    throw PreconditionError("epsilon must lie in (0, 1)");
  const long long f = floor_of(epsilon * Rational(n));
  switch (group) {
    case GroupId::H: return 2 * binomial(n, f) * ipow(3, f);
    case GroupId::I:
      if (!census_bound) throw PreconditionError("the bad-strings bound is required for I");
      return 2 * binomial(n, f) * ipow(15, f) * ipow(BigInt(*census_bound), 1 + f);
    case GroupId::G: break;
  }
  throw PreconditionError("no bad-word bound for G");
}

struct BadElementCount {
  long long radius = 0;
  Rational epsilon{0};
  std::size_t considered = 0;  // non-trivial elements of the splitting stabiliser
  std::size_t bad = 0;
  std::size_t without_alternating = 0;
  std::size_t census_bound = 0;      // I only
  long long stated_letter_bound = 0;  // most letters per word, as published
  long long letter_bound = 0;        // from the weights
  long long max_letters_seen = 0;
  BigInt stated_bound = 0;
  BigInt corrected_bound = 0;
};

// Counts elements g != 1 of the level-split_depth stabiliser with L(g) <=
// radius all of whose alternating geodesics are epsilon-bad.
inline BadElementCount count_bad_elements(const NamedGroup& group, Ball& ball, long long radius,
                                          Rational epsilon, Catalog catalog = Catalog::completed,
                                          int census_k = 40, std::size_t geodesic_cap = 1'000'000) {
  WordClassifier::check_epsilon(epsilon);
  const auto id = parse_group_id(group.name);
  if (!id || *id == GroupId::G || &group != &builtin(*id))
    throw PreconditionError("bad elements are defined for the built-in H and I");
  const WordClassifier cls(group, catalog);
  const auto& gens = ball.generating_set();
  ball.extend_to(radius);

  BadElementCount out;
  out.radius = radius;
  out.epsilon = epsilon;
  const int s = swap_generator(gens);
  long long wmin = 0;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (static_cast<int>(i) != s && (wmin == 0 || gens[i].weight < wmin)) wmin = gens[i].weight;
  const long long ws = gens[static_cast<std::size_t>(s)].weight;
  out.letter_bound = (radius + ws) / (wmin + ws);
  out.stated_letter_bound = *id == GroupId::H ? (radius + 3) / 6 : (radius + 32) / 35;

  for (auto eid : stabilizer_ids(ball, radius, group.split_depth)) {
    if (eid == 0 || ball.length(eid) == 0) continue;
    ++out.considered;
    const auto geos = geodesic_words(ball, eid, {geodesic_cap, true});
    if (geos.truncated) throw BudgetExceeded("geodesic words", geos.words.size());
    if (geos.words.empty()) {
      ++out.without_alternating;
      continue;
    }
    bool all_bad = true;
    for (const auto& w : geos.words) {
      const auto aw = to_alternating(gens, w);
      out.max_letters_seen = std::max<long long>(out.max_letters_seen, static_cast<long long>(aw.size()));
      if (!cls.is_bad(aw, epsilon)) {
        all_bad = false;
        break;
      }
    }
    if (all_bad) ++out.bad;
  }

  std::optional<std::size_t> B;
  if (*id == GroupId::I) {
    out.census_bound = bad_strings_census(census_k, catalog).bound_observed;
    B = out.census_bound;
  }
  for (long long m = 0; m <= out.stated_letter_bound; ++m)
    out.stated_bound += bad_word_bound(*id, m, epsilon, B);
  for (long long m = 0; m <= out.letter_bound; ++m)
    out.corrected_bound += bad_word_bound(*id, m, epsilon, B);
  return out;
}

inline BadElementCount count_bad_elements(const NamedGroup& group, long long radius,
                                          Rational epsilon, Catalog catalog = Catalog::completed,
                                          BallOptions opts = {}) {
  Ball ball(group.working_set(), opts);
  return count_bad_elements(group, ball, radius, epsilon, catalog);
}

// (4 eps + 3 (2 - eps)) / (5 eps + 3 (2 - eps)).
inline Rational eta_of_epsilon_H(Rational epsilon) {
  if (epsilon <= Rational(0) || epsilon > Rational(1))
    throw PreconditionError("epsilon must lie in (0, 1]");
  const Rational rest = (Rational(2) - epsilon) * Rational(3);
  return (Rational(4) * epsilon + rest) / (Rational(5) * epsilon + rest);
}

// Smallest integer shift with L(phi_L g) + L(phi_R g) <= eta(eps) L(g) + shift
// over the epsilon-good even elements of H with L(g) <= radius.
inline long long reduction_shift_H(long long radius, Rational epsilon) {
  const auto& H = builtin(GroupId::H);
  const WordClassifier cls(H);
  const Rational eta = eta_of_epsilon_H(epsilon);
  LengthOracle oracle(H.standard);
  oracle.ball().extend_to(radius);
  long long shift = 0;
  for (auto id : stabilizer_ids(oracle.ball(), radius, 1)) {
    const auto geos = geodesic_words(oracle.ball(), id, {1'000'000, true});
    const bool bad = !geos.words.empty() &&
                     std::all_of(geos.words.begin(), geos.words.end(), [&](const GenWord& w) {
                       return cls.is_bad(to_alternating(H.standard, w), epsilon);
                     });
    if (bad) continue;
    const auto sp = split(H.standard.element(oracle.ball().geodesic(id)), 1, oracle);
    const Rational excess = Rational(sp.parts_length_sum) - eta * Rational(sp.input_length);
    long long need = floor_of(excess);
    if (Rational(need) < excess) ++need;
    shift = std::max(shift, need);
  }
  return shift;
}

}  // namespace selfsim
