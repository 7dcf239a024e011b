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

// Weighted word metric: Cayley balls, growth series, geodesic words.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "selfsim/element_index.hpp"
#include "selfsim/generating_set.hpp"
#include "selfsim/report.hpp"
#include "selfsim/tree_automorphism.hpp"

namespace selfsim {

struct BallOptions {
  int key_depth = ElementIndex::kDefaultKeyDepth;
  // Entry budget (final and tentative entries together); roughly 8 GiB.
  std::size_t max_entries = 40'000'000;
  unsigned threads = 1;
};

// Ball of a weighted Cayley graph, grown shell by shell with a bucket queue
// (Dijkstra over integer lengths). Every tight predecessor (h, s) with
// L(h) + w(s) = L(g) is kept, so all geodesic words can be recovered.
// extend_to() may be called repeatedly with growing radii.
class Ball {
 public:
  struct Pred {
    std::uint32_t from;
    std::uint16_t gen;
  };
  struct Entry {
    long long length;
    Portrait key;
    std::vector<Pred> preds;
    bool final = false;
  };

  explicit Ball(GeneratingSet gens, BallOptions opts = {})
      : gens_(std::move(gens)), opts_(opts), index_(gens_.table_ptr(), opts.key_depth) {
    if (gens_.empty()) throw PreconditionError("empty generating set");
    if (opts_.threads == 0) opts_.threads = 1;
    for (const auto& g : gens_.generators())
      gen_keys_.push_back(gens_.table().word_portrait(g.word, opts_.key_depth));
    entries_.push_back({0, Portrait(opts_.key_depth), {}, false});
    index_.insert(entries_[0].key, 0);
    pending_[0].push_back(0);
  }

  const GeneratingSet& generating_set() const { return gens_; }
  long long radius() const { return radius_; }
  const ElementIndex& index() const { return index_; }

  void extend_to(long long radius) {
    if (radius < 0) throw PreconditionError("negative radius");
    if (radius <= radius_) return;
    if (poisoned_) throw BudgetExceeded("ball enumeration already hit its budget", radius_);
    while (!pending_.empty() && pending_.begin()->first <= radius) {
      const long long d = pending_.begin()->first;
      std::vector<std::uint32_t> shell = std::move(pending_.begin()->second);
      pending_.erase(pending_.begin());
      std::sort(shell.begin(), shell.end());
      shell.erase(std::unique(shell.begin(), shell.end()), shell.end());
      std::erase_if(shell, [&](std::uint32_t id) {
        return entries_[id].final || entries_[id].length != d;
      });
      for (std::uint32_t id : shell) {
        entries_[id].final = true;
        order_.push_back(id);
      }
      expand_shell(shell, d);
    }
    radius_ = radius;
  }

  // Final entries with length <= radius(), ordered by (length, discovery).
  const std::vector<std::uint32_t>& ids() const { return order_; }
  std::size_t size() const { return order_.size(); }
  std::size_t entry_count() const { return entries_.size(); }
  const Entry& entry(std::size_t id) const { return entries_.at(id); }
  long long length(std::size_t id) const { return entries_.at(id).length; }

  // One geodesic word: follows the first recorded predecessor.
  GenWord geodesic(std::size_t id) const {
    GenWord w;
    while (id != 0) {
      const Pred& p = entries_[id].preds.front();
      w.push_back(p.gen);
      id = p.from;
    }
    std::reverse(w.begin(), w.end());
    return w;
  }
  Word table_word(std::size_t id) const { return gens_.expand(geodesic(id)); }
  Element element(std::size_t id) const { return Element(gens_.table_ptr(), table_word(id)); }

  // Id of the element represented by `w` if it lies in the ball.
  std::optional<std::size_t> find(const Word& w) const {
    auto id = index_.find(index_.key(w), w, [&](std::size_t i) { return table_word(i); });
    if (!id || !entries_[*id].final || entries_[*id].length > radius_) return std::nullopt;
    return id;
  }
  // Like find(), for an element already known to lie in the ball.
  std::size_t find_present(const Word& w) const {
    auto id = index_.find(index_.key(w), w, [&](std::size_t i) { return table_word(i); }, true);
    if (!id || !entries_[*id].final || entries_[*id].length > radius_)
      throw PreconditionError("element expected in the ball is missing");
    return *id;
  }

  std::optional<std::size_t> find(const Element& e) const {
    if (e.table_ptr() != gens_.table_ptr()) throw TableMismatch();
    return find(e.word());
  }

  // gamma(r) for r <= radius().
  std::size_t count_up_to(long long r) const {
    if (r > radius_) throw PreconditionError("radius beyond the enumerated ball");
    auto it = std::upper_bound(order_.begin(), order_.end(), r,
                               [&](long long v, std::uint32_t id) { return v < entries_[id].length; });
    return static_cast<std::size_t>(it - order_.begin());
  }

 private:
  void expand_shell(const std::vector<std::uint32_t>& shell, long long d) {
    const std::size_t ng = gens_.size();
    std::vector<Portrait> keys(shell.size() * ng);
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        for (std::size_t s = 0; s < ng; ++s)
          keys[i * ng + s] = entries_[shell[i]].key.then(gen_keys_[s]);
    };
    const unsigned nt = std::min<unsigned>(opts_.threads, static_cast<unsigned>(shell.size()));
    if (nt <= 1) {
      work(0, shell.size());
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (shell.size() + nt - 1) / nt;
      for (unsigned t = 0; t < nt; ++t) {
        const std::size_t b = t * chunk, e = std::min(shell.size(), b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
      }
      for (auto& th : pool) th.join();
    }

    // Merge sequentially in (parent id, generator) order: deterministic.
    for (std::size_t i = 0; i < shell.size(); ++i) {
      const std::uint32_t parent = shell[i];
      Word parent_word;
      bool have_parent_word = false;
      for (std::size_t s = 0; s < ng; ++s) {
        const long long nd = d + gens_[s].weight;
        Portrait& key = keys[i * ng + s];
        auto word_of = [&](std::size_t id) { return table_word(id); };
        std::optional<std::size_t> hit;
        if (index_.has_bucket(key)) {
          if (!have_parent_word) {
            parent_word = table_word(parent);
            have_parent_word = true;
          }
          hit = index_.find(key, concat(parent_word, gens_[s].word), word_of);
        }
        const Pred pred{parent, static_cast<std::uint16_t>(s)};
        if (!hit) {
          if (entries_.size() >= opts_.max_entries) {
            poisoned_ = true;
            radius_ = d;
            throw BudgetExceeded("ball exceeded " + std::to_string(opts_.max_entries) +
                                     " entries; complete up to radius " + std::to_string(d),
                                 d);
          }
          const auto id = static_cast<std::uint32_t>(entries_.size());
          index_.insert(key, id);
          entries_.push_back({nd, std::move(key), {pred}, false});
          pending_[nd].push_back(id);
          continue;
        }
        Entry& e = entries_[*hit];
        if (e.final || nd > e.length) continue;
        if (nd == e.length) {
          e.preds.push_back(pred);
        } else {
          e.length = nd;
          e.preds.assign(1, pred);
          pending_[nd].push_back(static_cast<std::uint32_t>(*hit));
        }
      }
    }
  }

  GeneratingSet gens_;
  BallOptions opts_;
  ElementIndex index_;
  std::vector<Portrait> gen_keys_;
  std::vector<Entry> entries_;
  std::map<long long, std::vector<std::uint32_t>> pending_;
  std::vector<std::uint32_t> order_;
  long long radius_ = -1;
  bool poisoned_ = false;
};

inline Ball enumerate_ball(const GeneratingSet& gens, long long radius, BallOptions opts = {}) {
  Ball b(gens, opts);
  b.extend_to(radius);
  return b;
}

// ---------------------------------------------------------------------------
// Growth
// ---------------------------------------------------------------------------

struct GrowthSample {
  long long r;
  std::size_t gamma;
  std::optional<double> rate;  // gamma(r)^(1/r); absent at r = 0
};

struct GrowthSeries {
  std::vector<GrowthSample> samples;
};

inline GrowthSeries growth_series(Ball& ball, long long max_radius, long long step = 1) {
  if (step <= 0) throw PreconditionError("step must be positive");
  ball.extend_to(max_radius);
  GrowthSeries g;
  for (long long r = 0; r <= max_radius; r += step) {
    const std::size_t n = ball.count_up_to(r);
    std::optional<double> rate;
    if (r > 0) rate = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(r));
    g.samples.push_back({r, n, rate});
  }
  return g;
}

inline GrowthSeries growth_series(const GeneratingSet& gens, long long max_radius,
                                  long long step = 1, BallOptions opts = {}) {
  Ball b(gens, opts);
  return growth_series(b, max_radius, step);
}

// ---------------------------------------------------------------------------
// Level stabilisers
// ---------------------------------------------------------------------------

// True iff g fixes every vertex of length <= level.
inline bool level_stabilizer_member(const Element& g, int level) {
  if (level < 0) throw PreconditionError("negative level");
  if (level == 0) return true;
  return portrait(g, level - 1).fixes_levels(level);
}

// ---------------------------------------------------------------------------
// Geodesic words
// ---------------------------------------------------------------------------

struct GeodesicSet {
  std::vector<GenWord> words;
  bool truncated = false;
};

struct GeodesicOptions {
  std::size_t cap = 1'000'000;
  bool alternating_only = false;
};

// All minimum-length words for the ball element `id`, rebuilt from the
// predecessor graph. With `alternating_only`, words with two adjacent swaps
// or two adjacent non-swap letters are skipped.
inline GeodesicSet geodesic_words(const Ball& ball, std::size_t id, GeodesicOptions opt = {}) {
  if (id >= ball.entry_count() || !ball.entry(id).final || ball.entry(id).length > ball.radius())
    throw PreconditionError("element is not in the ball");
  const auto& gens = ball.generating_set();
  GeodesicSet out;
  GenWord suffix;  // reversed
  // Iterative DFS over (node, next predecessor index).
  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  std::vector<Frame> stack{{id, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.node == 0) {
      out.words.emplace_back(suffix.rbegin(), suffix.rend());
      if (out.words.size() >= opt.cap) {
        out.truncated = true;
        return out;
      }
      stack.pop_back();
      if (!stack.empty()) suffix.pop_back();
      continue;
    }
    const auto& preds = ball.entry(f.node).preds;
    if (f.next == preds.size()) {
      stack.pop_back();
      if (!stack.empty()) suffix.pop_back();
      continue;
    }
    const Ball::Pred p = preds[f.next++];
    if (opt.alternating_only && !suffix.empty() &&
        gens.is_swap(p.gen) == gens.is_swap(suffix.back()))
      continue;
    suffix.push_back(p.gen);
    stack.push_back({p.from, 0});
  }
  return out;
}

inline GeodesicSet geodesic_words(const Ball& ball, const Element& g, GeodesicOptions opt = {}) {
  auto id = ball.find(g);
  if (!id) throw PreconditionError("element is not in the ball");
  return geodesic_words(ball, *id, opt);
}

// For every element, whether some geodesic word alternates between swap and
// non-swap letters, computed by dynamic programming over predecessors.
// has[id][t]: an alternating geodesic ending in a swap (t = 1) or not (t = 0).
inline std::vector<std::array<bool, 2>> alternating_geodesic_table(const Ball& ball) {
  const auto& gens = ball.generating_set();
  std::size_t max_id = 0;
  for (auto id : ball.ids()) max_id = std::max<std::size_t>(max_id, id);
  std::vector<std::array<bool, 2>> has(max_id + 1, {false, false});
  for (auto id : ball.ids()) {
    if (id == 0) continue;
    for (const auto& p : ball.entry(id).preds) {
      const bool t = gens.is_swap(p.gen);
      if (p.from == 0 || has[p.from][!t]) has[id][t] = true;
    }
  }
  return has;
}

// Every element of the ball has at least one alternating geodesic word.
inline Report alternation_check(const Ball& ball, std::size_t max_listed = 20) {
  Report r;
  r.name = "alternating geodesics up to radius " + std::to_string(ball.radius());
  const auto has = alternating_geodesic_table(ball);
  std::size_t failures = 0;
  for (auto id : ball.ids()) {
    if (id == 0 || has[id][0] || has[id][1]) continue;
    ++failures;
    if (failures <= max_listed)
      r.add("alternating geodesic for " + ball.generating_set().format(ball.geodesic(id)), false,
            "length " + std::to_string(ball.length(id)));
  }
  r.add("all " + std::to_string(ball.size()) + " elements have an alternating geodesic",
        failures == 0, std::to_string(failures) + " without");
  return r;
}

}  // namespace selfsim
