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

// Text format for user-supplied recursion tables:
//
//   # comment
//   s = (1, 1) swap
//   a = (s, b)
//   inverse a = a
//   weight a = 5
//
// Words are letter sequences without commas; "1" is the empty word. The
// activity keyword may also be written "[swap]". Letters without a weight
// line weigh 1. The standard generating set is every table letter.

#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "selfsim/group_defs.hpp"

namespace selfsim {

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

inline NamedGroup parse_recursion(std::string_view text, std::string name = "file") {
  std::vector<GeneratorSpec> specs;
  std::map<std::string, std::size_t> by_name;
  std::vector<std::pair<std::string, std::size_t>> weight_lines;  // text, line
  std::map<std::string, int> weights;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) { throw ParseError(what, lineno); };
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected '='");
    const std::string lhs = detail::trim(std::string_view(line).substr(0, eq));
    const std::string rhs = detail::trim(std::string_view(line).substr(eq + 1));

    if (lhs.rfind("inverse ", 0) == 0 || lhs.rfind("weight ", 0) == 0) {
      const bool inv = lhs[0] == 'i';
      const std::string g = detail::trim(std::string_view(lhs).substr(inv ? 8 : 7));
      auto it = by_name.find(g);
      if (it == by_name.end()) fail("'" + g + "' is not declared above");
      if (inv) {
        specs[it->second].inverse = rhs == "1" ? "" : rhs;
      } else {
        try {
          std::size_t used = 0;
          const int w = std::stoi(rhs, &used);
          if (used != rhs.size() || w <= 0) fail("weight must be a positive integer");
          weights[g] = w;
        } catch (const std::logic_error&) {
          fail("weight must be a positive integer");
        }
      }
      continue;
    }

    if (lhs.empty() || lhs.find_first_of(" \t(),") != std::string::npos)
      fail("invalid generator name '" + lhs + "'");
    if (by_name.count(lhs)) fail("duplicate generator '" + lhs + "'");
    if (rhs.empty() || rhs[0] != '(') fail("expected '(left, right)'");
    const auto close = rhs.find(')');
    const auto comma = rhs.find(',');
    if (close == std::string::npos || comma == std::string::npos || comma > close)
      fail("expected '(left, right)'");
    const std::string left = detail::trim(std::string_view(rhs).substr(1, comma - 1));
    const std::string right = detail::trim(std::string_view(rhs).substr(comma + 1, close - comma - 1));
    const std::string tail = detail::trim(std::string_view(rhs).substr(close + 1));
    Activity act = Activity::identity;
    if (tail == "swap" || tail == "[swap]") act = Activity::swap;
    else if (!tail.empty()) fail("unexpected '" + tail + "'");
    by_name.emplace(lhs, specs.size());
    specs.push_back({lhs, act, left == "1" ? "" : left, right == "1" ? "" : right, std::nullopt});
  }
  if (specs.empty()) throw ParseError("no generators declared");

  NamedGroup g;
  g.name = name;
  try {
    g.table = RecursionTable::make(name, specs);
  } catch (const ParseError&) {
    throw;
  } catch (const BudgetExceeded& e) {
    throw ParseError(std::string("inverse check did not terminate: ") + e.what());
  }
  std::vector<Generator> gens;
  for (const auto& s : specs) {
    auto w = weights.find(s.name);
    gens.push_back({s.name, {g.table->letter(s.name)}, w == weights.end() ? 1 : w->second});
  }
  g.standard = GeneratingSet(g.table, std::move(gens));
  return g;
}

inline NamedGroup load_recursion_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
  return parse_recursion(ss.str(), stem);
}

// "G", "H", "I" or "file:<path>". Built-ins are returned by reference to the
// static instances; files are loaded into `storage`.
inline const NamedGroup& select_group(std::string_view selector, std::optional<NamedGroup>& storage) {
  if (selector.rfind("file:", 0) == 0) {
    storage = load_recursion_file(std::string(selector.substr(5)));
    return *storage;
  }
  if (auto id = parse_group_id(selector)) return builtin(*id);
  throw PreconditionError("unknown group '" + std::string(selector) + "'");
}

}  // namespace selfsim
