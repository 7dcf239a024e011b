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

#include <string>
#include <utility>
#include <vector>

namespace selfsim {

// Outcome of a batch of named checks. Verifications never throw on a failed
// check; they record it here.
struct Check {
  std::string label;
  bool ok = false;
  std::string detail;
};

struct Report {
  std::string name;
  std::vector<Check> checks;

  void add(std::string label, bool ok, std::string detail = {}) {
    checks.push_back({std::move(label), ok, std::move(detail)});
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += !c.ok;
    return n;
  }
  bool passed() const { return failures() == 0; }
};

}  // namespace selfsim
