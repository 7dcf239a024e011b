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

// Automorphisms of the infinite binary rooted tree given by wreath
// recursions g = (g_L, g_R) s^e.
//
// Conventions used throughout the library:
//  * Words are read left to right and act on the right: the element `uv`
//    applies u first, then v. With this convention the pair of a product is
//    the coordinatewise product of pairs, twisted by the first factor's root
//    permutation: (gh)_x = g_x h_{g(x)}.
//  * Vertices are strings over {L, R}; the first character is the top level.
//  * The empty word is the identity.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "selfsim/errors.hpp"

namespace selfsim {

enum class Activity : std::uint8_t { identity = 0, swap = 1 };

inline Activity operator^(Activity a, Activity b) {
  return static_cast<Activity>(static_cast<int>(a) ^ static_cast<int>(b));
}

using Letter = std::uint16_t;
using Word = std::vector<Letter>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter x : w) h = (h ^ x) * 1099511628211ull;
    return h ^ w.size();
  }
};

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ---------------------------------------------------------------------------
// Portrait: root activities of all sections down to a fixed depth.
//
// Nodes are stored in heap order: root 0, children of i are 2i+1 (L) and
// 2i+2 (R). A depth-d portrait has labels on levels 0..d and determines the
// action on every vertex of level <= d+1.
// ---------------------------------------------------------------------------
class Portrait {
 public:
  explicit Portrait(int depth = 0) : depth_(depth) {
    if (depth < 0 || depth > 20) throw PreconditionError("portrait depth out of range");
    bits_.assign((node_count() + 63) / 64, 0);
  }

  int depth() const { return depth_; }
  std::size_t node_count() const { return (std::size_t{2} << depth_) - 1; }

  bool swaps(std::size_t node) const { return (bits_[node >> 6] >> (node & 63)) & 1u; }
  void set_swap(std::size_t node, bool on) {
    const std::uint64_t m = std::uint64_t{1} << (node & 63);
    if (on) bits_[node >> 6] |= m; else bits_[node >> 6] &= ~m;
  }

  Activity activity() const { return swaps(0) ? Activity::swap : Activity::identity; }

  // Label at a vertex given as an L/R string of length <= depth.
  Activity at(std::string_view vertex) const {
    if (static_cast<int>(vertex.size()) > depth_)
      throw PreconditionError("vertex below portrait depth");
    std::size_t node = 0;
    for (char c : vertex) node = 2 * node + (c == 'R' ? 2 : 1);
    return swaps(node) ? Activity::swap : Activity::identity;
  }

  bool is_identity() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
  }

  // True iff no label is set on levels < `levels`, i.e. the element fixes
  // every vertex of level <= `levels`.
  bool fixes_levels(int levels) const {
    if (levels > depth_ + 1) throw PreconditionError("portrait too shallow for level check");
    const std::size_t upto = (std::size_t{1} << levels) - 1;
    for (std::size_t i = 0; i < upto; ++i)
      if (swaps(i)) return false;
    return true;
  }

  // Product: apply *this, then `next`.
  Portrait then(const Portrait& next) const {
    if (next.depth_ != depth_) throw PreconditionError("portrait depth mismatch");
    Portrait out(depth_);
    const std::size_t n = node_count();
    const std::size_t internal = (std::size_t{1} << depth_) - 1;
    thread_local std::vector<std::uint32_t> image;
    image.resize(n);
    image[0] = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool s = swaps(i);
      if (s != next.swaps(image[i])) out.set_swap(i, true);
      if (i < internal) {
        image[2 * i + 1] = 2 * image[i] + 1 + s;
        image[2 * i + 2] = 2 * image[i] + 2 - s;
      }
    }
    return out;
  }

  // Portrait of depth+1 with the given root label and the two subtrees.
  static Portrait join(Activity root, const Portrait& left, const Portrait& right) {
    if (left.depth_ != right.depth_) throw PreconditionError("portrait depth mismatch");
    Portrait out(left.depth_ + 1);
    out.set_swap(0, root == Activity::swap);
    for (int level = 0; level <= left.depth_; ++level) {
      const std::size_t width = std::size_t{1} << level;
      const std::size_t src = width - 1;
      const std::size_t dst = 2 * width - 1;
      for (std::size_t j = 0; j < width; ++j) {
        out.set_swap(dst + j, left.swaps(src + j));
        out.set_swap(dst + width + j, right.swaps(src + j));
      }
    }
    return out;
  }

  // Portrait of the section at the left (`right == false`) or right child.
  Portrait child(bool right) const {
    if (depth_ == 0) throw PreconditionError("depth-0 portrait has no children");
    Portrait out(depth_ - 1);
    for (int level = 0; level < depth_; ++level) {
      const std::size_t width = std::size_t{1} << level;
      const std::size_t src = 2 * width - 1 + (right ? width : 0);
      for (std::size_t j = 0; j < width; ++j) out.set_swap(width - 1 + j, swaps(src + j));
    }
    return out;
  }

  Portrait truncated(int depth) const {
    if (depth > depth_) throw PreconditionError("cannot deepen a portrait");
    Portrait out(depth);
    for (std::size_t i = 0; i < out.node_count(); ++i) out.set_swap(i, swaps(i));
    return out;
  }

  // Node labels packed eight per byte (node i -> bit i%8 of byte i/8),
  // printed as lowercase hex.
  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    const std::size_t bytes = (node_count() + 7) / 8;
    s.reserve(2 * bytes);
    for (std::size_t b = 0; b < bytes; ++b) {
      const unsigned v = static_cast<unsigned>((bits_[b / 8] >> (8 * (b % 8))) & 0xffu);
      s.push_back(digits[v >> 4]);
      s.push_back(digits[v & 15]);
    }
    return s;
  }

  std::size_t hash() const noexcept {
    std::size_t h = static_cast<std::size_t>(depth_) * 0x9e3779b97f4a7c15ull;
    for (std::uint64_t w : bits_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return h;
  }

  friend bool operator==(const Portrait& a, const Portrait& b) {
    return a.depth_ == b.depth_ && a.bits_ == b.bits_;
  }
  friend bool operator<(const Portrait& a, const Portrait& b) {
    if (a.depth_ != b.depth_) return a.depth_ < b.depth_;
    return a.bits_ < b.bits_;
  }

 private:
  int depth_;
  std::vector<std::uint64_t> bits_;
};

struct PortraitHash {
  std::size_t operator()(const Portrait& p) const noexcept { return p.hash(); }
};

// ---------------------------------------------------------------------------
// RecursionTable
// ---------------------------------------------------------------------------

// One line of a recursion system, with words still spelled as text.
struct GeneratorSpec {
  std::string name;
  Activity activity = Activity::identity;
  std::string left;   // "" or "1" for the empty word
  std::string right;
  std::optional<std::string> inverse;  // defaults to the generator itself
};

class RecursionTable;
using TablePtr = std::shared_ptr<const RecursionTable>;

// A self-similar group definition: generators with root activity, the two
// section words, and an inverse word for each generator. Immutable after
// construction; the memo caches behind it are internally synchronised.
class RecursionTable {
 public:
  static constexpr std::size_t kDefaultStateBudget = 100000;

  // Builds and validates a table. The inverse invariant (g * inverse(g)
  // trivial) is checked with the section-closure procedure and reported as a
  // ParseError when it fails.
  static TablePtr make(std::string name, const std::vector<GeneratorSpec>& specs,
                       std::size_t state_budget = kDefaultStateBudget) {
    std::shared_ptr<RecursionTable> t(new RecursionTable());
    t->name_ = std::move(name);
    t->state_budget_ = state_budget;
    if (specs.empty()) throw ParseError("recursion table has no generators");
    for (const auto& s : specs) {
      if (s.name.empty() || s.name[0] == '1') throw ParseError("invalid generator name '" + s.name + "'");
      if (t->index_.count(s.name)) throw ParseError("duplicate generator '" + s.name + "'");
      if (specs.size() > 0xfffe) throw ParseError("too many generators");
      t->index_.emplace(s.name, static_cast<Letter>(t->names_.size()));
      t->names_.push_back(s.name);
    }
    for (const auto& s : specs) {
      t->activity_.push_back(s.activity);
      t->sections_.push_back({t->parse_word(s.left), t->parse_word(s.right)});
      t->inverse_.push_back(s.inverse ? t->parse_word(*s.inverse)
                                      : Word{t->index_.at(s.name)});
    }
    // Free reduction trusts the declared inverses, so they are checked
    // before it is enabled.
    t->inverse_letter_.assign(t->size(), kNoLetter);
    for (Letter g = 0; g < t->size(); ++g) {
      Word w{g};
      w.insert(w.end(), t->inverse_[g].begin(), t->inverse_[g].end());
      if (!t->trivial_word(w))
        throw ParseError("declared inverse of '" + t->names_[g] + "' is not an inverse");
    }
    for (Letter g = 0; g < t->size(); ++g)
      if (t->inverse_[g].size() == 1) t->inverse_letter_[g] = t->inverse_[g][0];
    return t;
  }

  const std::string& name() const { return name_; }
  std::size_t size() const { return names_.size(); }
  const std::string& letter_name(Letter g) const { return names_.at(g); }
  Activity activity(Letter g) const { return activity_.at(g); }
  const Word& section(Letter g, bool right) const {
    return right ? sections_.at(g).second : sections_.at(g).first;
  }
  const Word& inverse_word(Letter g) const { return inverse_.at(g); }
  std::size_t state_budget() const { return state_budget_; }

  std::optional<Letter> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Letter letter(std::string_view name) const {
    auto l = find(name);
    if (!l) throw ParseError("unknown generator '" + std::string(name) + "'");
    return *l;
  }

  // Tokenises text by longest match against the generator names. Whitespace
  // and '.' are separators; "1" (or an empty string) is the empty word.
  Word parse_word(std::string_view text) const {
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (c == ' ' || c == '\t' || c == '.' || c == '*') { ++i; continue; }
      if (c == '1') {
        // Only a standalone "1" means identity.
        ++i;
        continue;
      }
      std::size_t best = 0;
      Letter best_letter = 0;
      for (Letter g = 0; g < size(); ++g) {
        const auto& n = names_[g];
        if (n.size() > best && text.substr(i, n.size()) == n) {
          best = n.size();
          best_letter = g;
        }
      }
      if (best == 0)
        throw ParseError("cannot parse word '" + std::string(text) + "' at offset " +
                         std::to_string(i));
      w.push_back(best_letter);
      i += best;
    }
    return w;
  }

  std::string format_word(const Word& w) const {
    if (w.empty()) return "1";
    bool short_names = std::all_of(names_.begin(), names_.end(),
                                   [](const std::string& n) { return n.size() == 1; });
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!short_names && i) s.push_back(' ');
      s += names_.at(w[i]);
    }
    return s;
  }

  bool valid_word(const Word& w) const {
    return std::all_of(w.begin(), w.end(), [&](Letter x) { return x < size(); });
  }

  // -- Word-level primitives --------------------------------------------------

  // Cancels adjacent letter/inverse-letter pairs.
  Word reduce(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (Letter x : w) {
      if (!out.empty() && inverse_letter_[out.back()] == x) out.pop_back();
      else out.push_back(x);
    }
    return out;
  }

  Activity word_activity(const Word& w) const {
    Activity a = Activity::identity;
    for (Letter x : w) a = a ^ activity_[x];
    return a;
  }

  // (left, right) section words, via the composition law letter by letter.
  std::pair<Word, Word> word_sections(const Word& w) const {
    std::pair<Word, Word> out;
    bool left_at_right = false;  // current position of the coordinate that started at L
    for (Letter x : w) {
      const auto& [sl, sr] = sections_[x];
      const Word& to_left = left_at_right ? sr : sl;
      const Word& to_right = left_at_right ? sl : sr;
      out.first.insert(out.first.end(), to_left.begin(), to_left.end());
      out.second.insert(out.second.end(), to_right.begin(), to_right.end());
      if (activity_[x] == Activity::swap) left_at_right = !left_at_right;
    }
    return out;
  }

  Word word_section_at(Word w, std::string_view vertex) const {
    for (char c : vertex) {
      auto s = word_sections(w);
      w = reduce(c == 'R' ? s.second : s.first);
    }
    return w;
  }

  Word inverse(const Word& w) const {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      out.insert(out.end(), inverse_[*it].begin(), inverse_[*it].end());
    return out;
  }

  // Decides triviality by exploring the closure of {w} under taking sections.
  // The element is trivial iff every word in that closure has trivial root
  // activity. Results are memoised; exceeding `budget` closure states throws.
  bool trivial_word(const Word& w, std::size_t budget = 0) const {
    if (budget == 0) budget = state_budget_;
    Word start = reduce(w);
    if (start.empty()) return true;
    if (auto hit = cache_lookup(start)) return *hit;

    std::unordered_set<Word, WordHash> seen{start};
    std::vector<Word> todo{start};
    while (!todo.empty()) {
      Word u = std::move(todo.back());
      todo.pop_back();
      if (word_activity(u) == Activity::swap) {
        cache_store(start, false);
        return false;
      }
      if (auto hit = cache_lookup(u)) {
        if (*hit) continue;
        cache_store(start, false);
        return false;
      }
      auto [l, r] = word_sections(u);
      for (Word* s : {&l, &r}) {
        Word v = reduce(*s);
        if (v.empty() || seen.count(v)) continue;
        if (seen.size() >= budget)
          throw BudgetExceeded("section closure exceeded " + std::to_string(budget) +
                               " states (table '" + name_ + "' may not be contracting)");
        seen.insert(v);
        todo.push_back(std::move(v));
      }
    }
    std::unique_lock lock(cache_mutex_);
    for (const Word& u : seen) trivial_cache_.emplace(u, true);
    return true;
  }

  // Portrait of a letter at the given depth (memoised, built level by level).
  const Portrait& letter_portrait(Letter g, int depth) const {
    {
      std::shared_lock lock(portrait_mutex_);
      if (static_cast<int>(letter_portraits_.size()) > depth) return letter_portraits_[depth][g];
    }
    std::unique_lock lock(portrait_mutex_);
    while (static_cast<int>(letter_portraits_.size()) <= depth) {
      const int d = static_cast<int>(letter_portraits_.size());
      std::vector<Portrait> level;
      level.reserve(size());
      for (Letter x = 0; x < size(); ++x) {
        Portrait p(d);
        if (d == 0) {
          p.set_swap(0, activity_[x] == Activity::swap);
        } else {
          p = Portrait::join(activity_[x], product_locked(sections_[x].first, d - 1),
                             product_locked(sections_[x].second, d - 1));
        }
        level.push_back(std::move(p));
      }
      letter_portraits_.push_back(std::move(level));
    }
    return letter_portraits_[depth][g];
  }

  Portrait word_portrait(const Word& w, int depth) const {
    letter_portrait(0, depth);
    std::shared_lock lock(portrait_mutex_);
    return product_locked(w, depth);
  }

 private:
  static constexpr Letter kNoLetter = 0xffff;

  RecursionTable() = default;

  Portrait product_locked(const Word& w, int depth) const {
    Portrait p(depth);
    for (Letter x : w) p = p.then(letter_portraits_[depth][x]);
    return p;
  }

  std::optional<bool> cache_lookup(const Word& w) const {
    std::shared_lock lock(cache_mutex_);
    auto it = trivial_cache_.find(w);
    if (it == trivial_cache_.end()) return std::nullopt;
    return it->second;
  }
  void cache_store(const Word& w, bool value) const {
    std::unique_lock lock(cache_mutex_);
    trivial_cache_[w] = value;  // idempotent fact; last writer wins
  }

  std::string name_;
  std::vector<std::string> names_;
  std::map<std::string, Letter, std::less<>> index_;
  std::vector<Activity> activity_;
  std::vector<std::pair<Word, Word>> sections_;
  std::vector<Word> inverse_;
  std::vector<Letter> inverse_letter_;
  std::size_t state_budget_ = kDefaultStateBudget;

  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<Word, bool, WordHash> trivial_cache_;
  mutable std::shared_mutex portrait_mutex_;
  mutable std::vector<std::vector<Portrait>> letter_portraits_;
};

// ---------------------------------------------------------------------------
// Element
// ---------------------------------------------------------------------------

// A word over a recursion table, denoting a tree automorphism. Words are not
// canonical: use equal() to compare group elements.
class Element {
 public:
  Element(TablePtr table, Word word) : table_(std::move(table)), word_(std::move(word)) {
    if (!table_) throw PreconditionError("element without a table");
    if (!table_->valid_word(word_)) throw PreconditionError("word uses undeclared letters");
  }
  Element(TablePtr table, std::string_view text)
      : Element(table, table->parse_word(text)) {}

  static Element identity(TablePtr table) { return Element(std::move(table), Word{}); }

  const RecursionTable& table() const { return *table_; }
  const TablePtr& table_ptr() const { return table_; }
  const Word& word() const { return word_; }
  std::size_t size() const { return word_.size(); }
  std::string str() const { return table_->format_word(word_); }

 private:
  TablePtr table_;
  Word word_;
};

inline void require_same_table(const Element& a, const Element& b) {
  if (a.table_ptr() != b.table_ptr()) throw TableMismatch();
}

inline Element compose(const Element& a, const Element& b) {
  require_same_table(a, b);
  return Element(a.table_ptr(), concat(a.word(), b.word()));
}

inline Element power(const Element& a, int k) {
  if (k < 0) throw PreconditionError("negative power");
  Word w;
  w.reserve(a.size() * static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) w.insert(w.end(), a.word().begin(), a.word().end());
  return Element(a.table_ptr(), std::move(w));
}

inline Activity activity(const Element& a) { return a.table().word_activity(a.word()); }

// (a_L, a_R) with a = (a_L, a_R) activity(a). Section words are returned
// unreduced, exactly as the composition law produces them.
inline std::pair<Element, Element> sections(const Element& a) {
  auto [l, r] = a.table().word_sections(a.word());
  return {Element(a.table_ptr(), std::move(l)), Element(a.table_ptr(), std::move(r))};
}

inline Element section_at(const Element& a, std::string_view vertex) {
  return Element(a.table_ptr(), a.table().word_section_at(a.word(), vertex));
}

inline Element inverse(const Element& a) {
  return Element(a.table_ptr(), a.table().inverse(a.word()));
}

inline bool trivial(const Element& a, std::size_t budget = 0) {
  return a.table().trivial_word(a.word(), budget);
}

inline bool equal(const Element& a, const Element& b, std::size_t budget = 0) {
  require_same_table(a, b);
  return trivial(compose(a, inverse(b)), budget);
}

// True iff a = (left, right) as a pair, i.e. a fixes level 1 and its
// sections are `left` and `right`.
inline bool is_pair(const Element& a, const Element& left, const Element& right) {
  if (activity(a) != Activity::identity) return false;
  auto [l, r] = sections(a);
  return equal(l, left) && equal(r, right);
}

inline Portrait portrait(const Element& a, int depth) {
  if (depth < 0) throw PreconditionError("negative portrait depth");
  return a.table().word_portrait(a.word(), depth);
}

namespace detail {
inline std::string act_word(const RecursionTable& t, const Word& w, std::string v);

inline std::string act_letter(const RecursionTable& t, Letter x, const std::string& v) {
  if (v.empty()) return v;
  const bool right = v[0] == 'R';
  std::string out(1, (right != (t.activity(x) == Activity::swap)) ? 'R' : 'L');
  out += act_word(t, t.section(x, right), v.substr(1));
  return out;
}

inline std::string act_word(const RecursionTable& t, const Word& w, std::string v) {
  for (Letter x : w) v = act_letter(t, x, v);
  return v;
}
}  // namespace detail

// Image of a vertex (string over {L, R}) under a, computed directly from the
// defining recursion.
inline std::string act(const Element& a, std::string_view vertex) {
  for (char c : vertex)
    if (c != 'L' && c != 'R') throw PreconditionError("vertex must be a word over {L, R}");
  return detail::act_word(a.table(), a.word(), std::string(vertex));
}

// All vertices of a level in left-to-right order ("LL..L" first).
inline std::vector<std::string> level_vertices(int level) {
  std::vector<std::string> out;
  const std::size_t n = std::size_t{1} << level;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string v(static_cast<std::size_t>(level), 'L');
    for (int b = 0; b < level; ++b)
      if ((i >> (level - 1 - b)) & 1u) v[static_cast<std::size_t>(b)] = 'R';
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace selfsim
