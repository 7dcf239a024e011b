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

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/tree_automorphism.hpp"

namespace selfsim {

// A named generator of a (possibly redundant) generating set: any word over
// the recursion table, with a strictly positive integer weight.
struct Generator {
  std::string name;
  Word word;
  int weight = 1;
};

// Index into a GeneratingSet; words over a generating set are GenWords.
using GenWord = std::vector<int>;

class GeneratingSet {
 public:
  GeneratingSet() = default;
  GeneratingSet(TablePtr table, std::vector<Generator> gens)
      : table_(std::move(table)), gens_(std::move(gens)) {
    if (!table_) throw PreconditionError("generating set without a table");
    for (const auto& g : gens_) {
      if (g.weight <= 0) throw PreconditionError("generator weights must be positive");
      if (!table_->valid_word(g.word)) throw PreconditionError("generator word uses unknown letters");
    }
    swap_.assign(gens_.size(), false);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const Word& w = gens_[i].word;
      swap_[i] = w.size() == 1 && table_->activity(w[0]) == Activity::swap &&
                 table_->section(w[0], false).empty() && table_->section(w[0], true).empty();
    }
  }

  bool empty() const { return gens_.empty(); }
  std::size_t size() const { return gens_.size(); }
  const TablePtr& table_ptr() const { return table_; }
  const RecursionTable& table() const { return *table_; }
  const Generator& operator[](std::size_t i) const { return gens_.at(i); }
  const std::vector<Generator>& generators() const { return gens_; }

  // True for the root swap (a single table letter with trivial sections).
  bool is_swap(int i) const { return swap_.at(static_cast<std::size_t>(i)); }

  std::optional<int> index(std::string_view name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name == name) return static_cast<int>(i);
    return std::nullopt;
  }

  // Generator whose word is exactly the single table letter `x`.
  std::optional<int> index_of_letter(Letter x) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].word.size() == 1 && gens_[i].word[0] == x) return static_cast<int>(i);
    return std::nullopt;
  }

  std::map<std::string, int> weights() const {
    std::map<std::string, int> m;
    for (const auto& g : gens_) m[g.name] = g.weight;
    return m;
  }

  Word expand(const GenWord& w) const {
    Word out;
    for (int i : w) {
      const Word& x = gens_.at(static_cast<std::size_t>(i)).word;
      out.insert(out.end(), x.begin(), x.end());
    }
    return out;
  }

  Element element(const GenWord& w) const { return Element(table_, expand(w)); }

  long long weight(const GenWord& w) const {
    long long s = 0;
    for (int i : w) s += gens_.at(static_cast<std::size_t>(i)).weight;
    return s;
  }

  // Weight of a table word, reading each letter as its one-letter generator.
  long long letter_weight(const Word& w) const {
    long long s = 0;
    for (Letter x : w) {
      auto i = index_of_letter(x);
      if (!i) throw PreconditionError("table letter '" + table_->letter_name(x) +
                                      "' is not a generator of this set");
      s += gens_[static_cast<std::size_t>(*i)].weight;
    }
    return s;
  }

  std::string format(const GenWord& w) const {
    if (w.empty()) return "1";
    const bool short_names = std::all_of(gens_.begin(), gens_.end(),
                                         [](const Generator& g) { return g.name.size() == 1; });
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!short_names && i) s.push_back(' ');
      s += gens_.at(static_cast<std::size_t>(w[i])).name;
    }
    return s;
  }

  // Parses generator names separated by whitespace (or juxtaposed, by
  // longest match).
  GenWord parse(std::string_view text) const {
    GenWord w;
    std::size_t i = 0;
    while (i < text.size()) {
      if (text[i] == ' ' || text[i] == '.') { ++i; continue; }
      if (text[i] == '1' && (i + 1 == text.size() || text[i + 1] == ' ')) { ++i; continue; }
      std::size_t best = 0;
      int which = -1;
      for (std::size_t g = 0; g < gens_.size(); ++g) {
        const auto& n = gens_[g].name;
        if (n.size() > best && text.substr(i, n.size()) == n) {
          best = n.size();
          which = static_cast<int>(g);
        }
      }
      if (which < 0) throw ParseError("cannot parse generator word '" + std::string(text) + "'");
      w.push_back(which);
      i += best;
    }
    return w;
  }

  // No two adjacent swaps and no two adjacent non-swap letters.
  bool alternating(const GenWord& w) const {
    for (std::size_t i = 1; i < w.size(); ++i)
      if (is_swap(w[i]) == is_swap(w[i - 1])) return false;
    return true;
  }

 private:
  TablePtr table_;
  std::vector<Generator> gens_;
  std::vector<bool> swap_;
};

}  // namespace selfsim
