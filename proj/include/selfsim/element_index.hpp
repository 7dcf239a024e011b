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

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "selfsim/tree_automorphism.hpp"

namespace selfsim {

// Hash index from group elements to dense ids. The depth-D portrait is the
// bucket key; elements sharing a bucket are told apart with the exact word
// problem. Callers supply the representative word of an id on demand, so
// the index itself stores no words.
class ElementIndex {
 public:
  static constexpr int kDefaultKeyDepth = 8;

  explicit ElementIndex(TablePtr table, int key_depth = kDefaultKeyDepth)
      : table_(std::move(table)), key_depth_(key_depth) {}

  int key_depth() const { return key_depth_; }
  Portrait key(const Word& w) const { return table_->word_portrait(w, key_depth_); }

  // With `known_present`, the caller guarantees the element is indexed, so a
  // single-entry bucket needs no equality check.
  template <class WordOf>
  std::optional<std::size_t> find(const Portrait& key, const Word& w, WordOf&& word_of,
                                  bool known_present = false) const {
    auto it = buckets_.find(key);
    if (it == buckets_.end()) return std::nullopt;
    const auto& ids = it->second;
    if (ids.size() == 1 && known_present) return ids.front();
    for (std::size_t id : ids) {
      Word probe = w;
      Word other = table_->inverse(word_of(id));
      probe.insert(probe.end(), other.begin(), other.end());
      ++equality_checks_;
      if (table_->trivial_word(probe)) return id;
    }
    return std::nullopt;
  }

  bool has_bucket(const Portrait& key) const { return buckets_.count(key) != 0; }

  void insert(const Portrait& key, std::size_t id) {
    auto& ids = buckets_[key];
    if (!ids.empty()) ++collisions_;
    ids.push_back(id);
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [k, ids] : buckets_) n += ids.size();
    return n;
  }
  std::size_t collisions() const { return collisions_; }
  std::size_t equality_checks() const { return equality_checks_; }

 private:
  TablePtr table_;
  int key_depth_;
  std::unordered_map<Portrait, std::vector<std::size_t>, PortraitHash> buckets_;
  std::size_t collisions_ = 0;
  mutable std::size_t equality_checks_ = 0;
};

}  // namespace selfsim
