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

// JSON and CSV rendering for the command-line tool.

#pragma once

#include <ostream>
#include <string>

#include "json.hpp"
#include "selfsim/patterns.hpp"
#include "selfsim/report.hpp"
#include "selfsim/splitting.hpp"

namespace selfsim::cli {

using nlohmann::ordered_json;

inline ordered_json to_json(const Report& r) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json j{{"label", c.label}, {"ok", c.ok}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  return {{"name", r.name},
          {"passed", r.passed()},
          {"failures", r.failures()},
          {"checks", std::move(checks)}};
}

inline ordered_json to_json(const BasicToolCertificate& c) {
  return {{"depth", c.depth},
          {"eta", to_string(c.eta)},
          {"p", to_string(c.p)},
          {"shift", c.shift},
          {"radius", c.radius},
          {"sample", c.sample},
          {"satisfied", c.satisfied},
          {"proportion_observed", to_string(c.proportion_observed)},
          {"eta_required", to_string(c.eta_required)},
          {"validates", c.validates}};
}

inline ordered_json to_json(const BadStringCensus& c) {
  ordered_json counts = ordered_json::array();
  for (const auto& [k, n] : c.counts) counts.push_back({{"k", k}, {"count", n}});
  ordered_json pairs = ordered_json::array();
  for (const auto& [x, y] : c.interior_pairs) pairs.push_back(x + " s _ s " + y);
  return {{"catalog", to_string(c.catalog)},
          {"counts", std::move(counts)},
          {"bound_observed", c.bound_observed},
          {"surviving_blocks", std::move(pairs)},
          {"period_margin", c.period_margin},
          {"period_structure", c.period_structure}};
}

inline ordered_json to_json(const BadElementCount& c) {
  return {{"radius", c.radius},
          {"epsilon", to_string(c.epsilon)},
          {"elements_considered", c.considered},
          {"bad_elements", c.bad},
          {"without_alternating_geodesic", c.without_alternating},
          {"census_bound", c.census_bound},
          {"stated_letter_bound", c.stated_letter_bound},
          {"letter_bound", c.letter_bound},
          {"max_letters_seen", c.max_letters_seen},
          {"stated_bound", c.stated_bound.str()},
          {"corrected_bound", c.corrected_bound.str()},
          {"within_stated_bound", BigInt(c.bad) <= c.stated_bound},
          {"within_corrected_bound", BigInt(c.bad) <= c.corrected_bound}};
}

// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace selfsim::cli
