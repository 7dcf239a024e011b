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

// Splitting homomorphisms on level stabilisers and the finite-ball checks
// of the length-reduction hypotheses used to prove subexponential growth.

#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "selfsim/group_defs.hpp"
#include "selfsim/metric.hpp"
#include "selfsim/report.hpp"

namespace selfsim {

using Rational = boost::rational<long long>;

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// Parses "p/q" or an integer.
inline Rational parse_rational(std::string_view s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(std::stoll(std::string(s)));
    const long long num = std::stoll(std::string(s.substr(0, slash)));
    const long long den = std::stoll(std::string(s.substr(slash + 1)));
    if (den == 0) throw PreconditionError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw PreconditionError("not a rational number: '" + std::string(s) + "'");
  }
}

// Exact group length L(g) for arbitrary elements, backed by a ball that is
// grown on demand to the weight of the element's word.
class LengthOracle {
 public:
  explicit LengthOracle(const GeneratingSet& gens, BallOptions opts = {})
      : ball_(std::make_shared<Ball>(gens, opts)) {}
  explicit LengthOracle(std::shared_ptr<Ball> ball) : ball_(std::move(ball)) {}

  Ball& ball() { return *ball_; }
  const GeneratingSet& generating_set() const { return ball_->generating_set(); }

  long long length(const Word& w) {
    const auto& gens = ball_->generating_set();
    const Word r = gens.table().reduce(w);
    const long long bound = gens.letter_weight(r);
    ball_->extend_to(bound);
    return ball_->length(ball_->find_present(r));
  }
  long long length(const Element& e) { return length(e.word()); }

 private:
  std::shared_ptr<Ball> ball_;
};

struct SplitResult {
  std::vector<Element> parts;  // sections at the level-k vertices, left to right
  std::vector<long long> part_lengths;
  long long input_length = 0;
  long long parts_length_sum = 0;
};

// Sections of g at the 2^depth vertices of level `depth`; g must fix that level.
inline SplitResult split(const Element& g, int depth, LengthOracle& oracle) {
  if (depth < 0) throw PreconditionError("negative splitting depth");
  if (!level_stabilizer_member(g, depth))
    throw PreconditionError("element " + g.str() + " does not fix level " + std::to_string(depth));
  SplitResult out;
  out.input_length = oracle.length(g);
  for (const auto& v : level_vertices(depth)) {
    Element part = section_at(g, v);
    const long long len = oracle.length(part);
    out.part_lengths.push_back(len);
    out.parts_length_sum += len;
    out.parts.push_back(std::move(part));
  }
  return out;
}

// Ids of ball elements with length <= radius that fix level `depth`.
inline std::vector<std::size_t> stabilizer_ids(const Ball& ball, long long radius, int depth) {
  std::vector<std::size_t> ids;
  for (auto id : ball.ids()) {
    const auto& e = ball.entry(id);
    if (e.length > radius) break;
    if (depth == 0 || e.key.fixes_levels(depth)) ids.push_back(id);
  }
  return ids;
}

struct ReductionStats {
  std::size_t checked = 0;
  std::size_t violations = 0;
  Rational worst_ratio{0};  // max over g != 1 of sum / L(g)
  std::string worst_element;
};

// Checks sum_i L(psi_i g) <= eta L(g) + shift for every element of the
// level-`depth` stabiliser with L(g) <= radius.
inline Report verify_reduction(const GeneratingSet& gens, long long radius, Rational eta,
                               Rational shift, int depth = 1, ReductionStats* stats = nullptr,
                               BallOptions opts = {}) {
  LengthOracle oracle(gens, opts);
  oracle.ball().extend_to(radius);
  const auto ids = stabilizer_ids(oracle.ball(), radius, depth);
  Report r;
  r.name = "reduction sum L(parts) <= " + to_string(eta) + " L(g) + " + to_string(shift) +
           " up to radius " + std::to_string(radius);
  ReductionStats st;
  std::vector<std::pair<GenWord, long long>> work;
  for (auto id : ids) work.emplace_back(oracle.ball().geodesic(id), oracle.ball().length(id));
  std::size_t listed = 0;
  for (const auto& [gw, len] : work) {
    const Element g = gens.element(gw);
    const auto s = split(g, depth, oracle);
    ++st.checked;
    if (len > 0) {
      const Rational ratio(s.parts_length_sum, len);
      if (ratio > st.worst_ratio) {
        st.worst_ratio = ratio;
        st.worst_element = gens.format(gw);
      }
    }
    if (Rational(s.parts_length_sum) > eta * Rational(len) + shift) {
      ++st.violations;
      if (listed++ < 20)
        r.add("violation at " + gens.format(gw), false,
              std::to_string(len) + " -> " + std::to_string(s.parts_length_sum));
    }
  }
  r.add(std::to_string(st.checked) + " stabiliser elements checked", st.violations == 0,
        std::to_string(st.violations) + " violations; worst ratio " + to_string(st.worst_ratio) +
            " at " + st.worst_element);
  if (stats) *stats = st;
  return r;
}

// The 7/8 reduction for Grigorchuk's group, with the two block examples.
inline Report verify_reduction_G(long long radius, ReductionStats* stats = nullptr) {
  const auto& G = builtin(GroupId::G);
  Report r = verify_reduction(G.standard, radius, Rational(7, 8), Rational(3), 1, stats);
  LengthOracle oracle(G.standard);
  for (auto [w, from, to] : {std::tuple{"sasb", 15, 13}, std::tuple{"sasa", 16, 14}}) {
    const auto s = split(G.element(w), 1, oracle);
    r.add(std::string(w) + ": " + std::to_string(from) + " -> " + std::to_string(to),
          s.input_length == from && s.parts_length_sum == to,
          std::to_string(s.input_length) + " -> " + std::to_string(s.parts_length_sum) + " as (" +
              s.parts[0].str() + ", " + s.parts[1].str() + ")");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Letters of I's extended generating set
// ---------------------------------------------------------------------------

struct LetterSplit {
  std::string name;
  long long left = 0, right = 0;  // L(phi_L g), L(phi_R g)
  long long base = 0;             // L(s) + L(g)
  bool good = false;              // strict reduction
};

inline LetterSplit split_letter(const GeneratingSet& gens, int gen, LengthOracle& oracle) {
  const auto s_idx = [&] {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens.is_swap(static_cast<int>(i))) return static_cast<int>(i);
    throw PreconditionError("generating set has no root swap");
  }();
  if (gens.is_swap(gen)) throw PreconditionError("the swap is not split");
  const Element g = gens.element({gen});
  auto [l, rr] = sections(g);
  LetterSplit out;
  out.name = gens[static_cast<std::size_t>(gen)].name;
  out.left = oracle.length(l);
  out.right = oracle.length(rr);
  out.base = oracle.length(gens.element({s_idx})) + oracle.length(g);
  out.good = out.left + out.right < out.base;
  return out;
}

// L(phi_L g) + L(phi_R g) < L(s) + L(g).
inline bool good_by_nature(const NamedGroup& group, std::string_view generator) {
  const auto& gens = group.working_set();
  auto idx = gens.index(generator);
  if (!idx) throw PreconditionError("unknown generator '" + std::string(generator) + "'");
  LengthOracle oracle(gens);
  return split_letter(gens, *idx, oracle).good;
}

struct GoodLetterSummary {
  std::vector<LetterSplit> letters;
  std::vector<std::string> bad;
  Rational worst_good_ratio{0};
  std::string worst_good;
};

inline GoodLetterSummary classify_letters(const NamedGroup& group) {
  const auto& gens = group.working_set();
  LengthOracle oracle(gens);
  GoodLetterSummary s;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens.is_swap(static_cast<int>(i))) continue;
    auto ls = split_letter(gens, static_cast<int>(i), oracle);
    if (!ls.good) {
      s.bad.push_back(ls.name);
    } else {
      const Rational q(ls.left + ls.right, ls.base);
      if (q > s.worst_good_ratio) {
        s.worst_good_ratio = q;
        s.worst_good = ls.name;
      }
    }
    s.letters.push_back(ls);
  }
  return s;
}

// Bad letters are exactly {a, a2, b2, b3}; good letters obey the 29/31
// bound with b7 extremal; no letter increases length when split.
inline Report verify_good_letter_bound(const NamedGroup& group) {
  Report r;
  r.name = "good and bad letters of " + group.name;
  const auto s = classify_letters(group);
  std::string bad;
  for (const auto& b : s.bad) bad += (bad.empty() ? "" : ",") + b;
  r.add("bad letters are {a,a2,b2,b3}", bad == "a,a2,b2,b3", "observed {" + bad + "}");
  for (const auto& l : s.letters) {
    r.add(l.name + ": " + std::to_string(l.left + l.right) + " <= " + std::to_string(l.base),
          l.left + l.right <= l.base);
    if (l.good)
      r.add(l.name + " within 29/31", 31 * (l.left + l.right) <= 29 * l.base,
            to_string(Rational(l.left + l.right, l.base)));
  }
  r.add("worst good letter is b7 at exactly 29/31",
        s.worst_good == "b7" && s.worst_good_ratio == Rational(29, 31),
        s.worst_good + " at " + to_string(s.worst_good_ratio));
  return r;
}

// ---------------------------------------------------------------------------
// Hypothesis checker for the growth criterion
// ---------------------------------------------------------------------------

struct BasicToolCertificate {
  Rational eta{0};
  Rational p{1};
  long long shift = 0;
  int depth = 1;
  long long radius = 0;
  std::size_t sample = 0;     // stabiliser elements with L <= radius
  std::size_t satisfied = 0;  // of those, with sum L(parts) <= eta radius + shift
  Rational proportion_observed{0};
  Rational eta_required{0};  // least eta reaching proportion p with this shift
  bool validates = false;
};

// Measures, on the finite ball of `radius`, the proportion of level-`depth`
// stabiliser elements whose parts have total length <= eta * radius + shift.
inline BasicToolCertificate check_basic_tool(const GeneratingSet& gens, int depth, Rational eta,
                                             Rational p, long long shift, long long radius,
                                             BallOptions opts = {}) {
  if (eta < Rational(0) || eta >= Rational(1))
    throw PreconditionError("eta must lie in [0, 1)");
  if (p <= Rational(0) || p > Rational(1)) throw PreconditionError("p must lie in (0, 1]");
  if (shift < 0) throw PreconditionError("shift must be non-negative");
  if (radius <= 0) throw PreconditionError("radius must be positive");
  LengthOracle oracle(gens, opts);
  oracle.ball().extend_to(radius);
  const auto ids = stabilizer_ids(oracle.ball(), radius, depth);
  if (ids.empty()) throw PreconditionError("no stabiliser elements in the ball");

  std::vector<GenWord> words;
  for (auto id : ids) words.push_back(oracle.ball().geodesic(id));
  BasicToolCertificate c;
  c.eta = eta;
  c.p = p;
  c.shift = shift;
  c.depth = depth;
  c.radius = radius;
  c.sample = words.size();
  std::vector<Rational> needed;
  const Rational bound = eta * Rational(radius) + Rational(shift);
  for (const auto& w : words) {
    const auto s = split(gens.element(w), depth, oracle);
    if (Rational(s.parts_length_sum) <= bound) ++c.satisfied;
    needed.push_back(std::max(Rational(0), Rational(s.parts_length_sum - shift, radius)));
  }
  c.proportion_observed = Rational(static_cast<long long>(c.satisfied),
                                   static_cast<long long>(c.sample));
  std::sort(needed.begin(), needed.end());
  // Smallest k with k / n >= p.
  const Rational kq = p * Rational(static_cast<long long>(c.sample));
  long long k = kq.numerator() / kq.denominator();
  if (Rational(k) < kq) ++k;
  k = std::max<long long>(k, 1);
  c.eta_required = needed[static_cast<std::size_t>(k - 1)];
  c.validates = c.proportion_observed >= p;
  return c;
}

}  // namespace selfsim
