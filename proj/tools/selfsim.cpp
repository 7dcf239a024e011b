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

// selfsim: command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
// exceeded.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "report_json.hpp"
#include "selfsim/group_defs.hpp"
#include "selfsim/metric.hpp"
#include "selfsim/patterns.hpp"
#include "selfsim/recursion_file.hpp"
#include "selfsim/splitting.hpp"

#ifndef SELFSIM_VERSION
#define SELFSIM_VERSION "0.1.0-unknown"
#endif

namespace {

using namespace selfsim;
using cli::ordered_json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Config {
  std::string group = "G";
  std::string out;
  unsigned threads = 1;
  std::size_t max_entries = BallOptions{}.max_entries;
  std::size_t word_cap = 1'000'000;
  long long radius = 20;
  long long max_radius = 20;
  long long step = 1;
  int depth = 1;
  std::string eta;
  std::string p = "1";
  long long shift = 0;
  std::string epsilon = "1/10";
  int max_k = 40;
  std::string catalog = "completed";
  std::string format = "csv";
};

unsigned default_threads() {
  if (const char* env = std::getenv("SELFSIM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::logic_error&) {
    }
  }
  return 1;
}

BallOptions ball_options(const Config& c) {
  BallOptions o;
  o.threads = c.threads;
  o.max_entries = c.max_entries;
  return o;
}

Catalog parse_catalog(const std::string& s) {
  if (s == "standard") return Catalog::standard;
  if (s == "completed") return Catalog::completed;
  throw PreconditionError("catalog must be 'standard' or 'completed'");
}

bool is_builtin(const NamedGroup& g) {
  auto id = parse_group_id(g.name);
  return id && &builtin(*id) == &g;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw PreconditionError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

ordered_json envelope(const std::string& command, const Config& c, ordered_json config) {
  config["group"] = c.group;
  config["threads"] = c.threads;
  return {{"tool", "selfsim"}, {"version", SELFSIM_VERSION}, {"command", command},
          {"config", std::move(config)}};
}

int emit(const Config& c, ordered_json doc, bool ok) {
  doc["ok"] = ok;
  Output out(c.out);
  out.stream() << doc.dump(2) << "\n";
  return ok ? kOk : kFailed;
}

int cmd_check_lemmas(const Config& c) {
  std::optional<NamedGroup> storage;
  const auto& g = select_group(c.group, storage);
  ordered_json reports = ordered_json::array();
  bool ok = true;
  auto add = [&](const Report& r) {
    ok = ok && r.passed();
    reports.push_back(cli::to_json(r));
  };
  if (is_builtin(g)) {
    add(verify_structure_lemmas(g));
    if (!g.table_rows.empty()) {
      add(verify_extended_table(g));
      add(verify_good_letter_bound(g));
      add(verify_patterns(Catalog::completed));
    }
  } else {
    // A loaded table has passed the inverse check; report its generators.
    Report r;
    r.name = "recursion table " + g.name;
    const auto& t = g.table;
    for (Letter x = 0; x < t->size(); ++x) {
      Word w{x};
      const auto& inv = t->inverse_word(x);
      w.insert(w.end(), inv.begin(), inv.end());
      r.add(t->letter_name(x) + " * inverse = 1", t->trivial_word(w));
    }
    add(r);
  }
  auto doc = envelope("check-lemmas", c, ordered_json::object());
  doc["reports"] = std::move(reports);
  return emit(c, std::move(doc), ok);
}

int cmd_ball(const Config& c) {
  std::optional<NamedGroup> storage;
  const auto& g = select_group(c.group, storage);
  const auto& gens = g.working_set();
  const Ball ball = enumerate_ball(gens, c.radius, ball_options(c));
  struct Row {
    long long length;
    std::string hex;
    std::string word;
  };
  std::vector<Row> rows;
  for (auto id : ball.ids())
    rows.push_back({ball.length(id), ball.entry(id).key.hex(), gens.format(ball.geodesic(id))});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.length, a.hex, a.word) < std::tie(b.length, b.hex, b.word);
  });
  Output out(c.out);
  auto& os = out.stream();
  os << "portrait_hex,min_length,geodesic\r\n";
  for (const auto& r : rows)
    os << cli::csv_field(r.hex) << ',' << r.length << ',' << cli::csv_field(r.word) << "\r\n";
  return kOk;
}

int cmd_growth(const Config& c) {
  std::optional<NamedGroup> storage;
  const auto& g = select_group(c.group, storage);
  const auto series = growth_series(g.working_set(), c.max_radius, c.step, ball_options(c));
  Output out(c.out);
  auto& os = out.stream();
  os << "r,gamma,rate_estimate\r\n";
  for (const auto& s : series.samples) {
    os << s.r << ',' << s.gamma << ',';
    if (s.rate) {
      std::ostringstream v;
      v << std::setprecision(12) << *s.rate;
      os << v.str();
    }
    os << "\r\n";
  }
  return kOk;
}

int cmd_verify_reduction(const Config& c) {
  std::optional<NamedGroup> storage;
  const auto& g = select_group(c.group, storage);
  ReductionStats stats;
  Report r;
  const Rational eta = c.eta.empty() ? Rational(7, 8) : parse_rational(c.eta);
  const long long shift = c.eta.empty() && c.shift == 0 ? 3 : c.shift;
  if (is_builtin(g) && g.name == "G" && c.eta.empty() && c.depth == 1)
    r = verify_reduction_G(c.radius, &stats);
  else
    r = verify_reduction(g.working_set(), c.radius, eta, Rational(shift), c.depth, &stats,
                         ball_options(c));
  auto doc = envelope("verify reduction", c,
                      {{"radius", c.radius}, {"depth", c.depth}, {"eta", to_string(eta)},
                       {"shift", shift}});
  doc["checked"] = stats.checked;
  doc["violations"] = stats.violations;
  doc["worst_ratio"] = to_string(stats.worst_ratio);
  doc["worst_element"] = stats.worst_element;
  doc["report"] = cli::to_json(r);
  return emit(c, std::move(doc), r.passed());
}

int cmd_verify_basictool(const Config& c) {
  std::optional<NamedGroup> storage;
  const auto& g = select_group(c.group, storage);
  const Rational p = parse_rational(c.p);
  BasicToolCertificate cert;
  if (c.eta.empty()) {
    // Measure first, then certify at the measured eta when it is below 1.
    cert = check_basic_tool(g.working_set(), c.depth, Rational(0), p, c.shift, c.radius,
                            ball_options(c));
    if (cert.eta_required < Rational(1))
      cert = check_basic_tool(g.working_set(), c.depth, cert.eta_required, p, c.shift, c.radius,
                              ball_options(c));
  } else {
    cert = check_basic_tool(g.working_set(), c.depth, parse_rational(c.eta), p, c.shift,
                            c.radius, ball_options(c));
  }
  auto doc = envelope("verify basictool", c,
                      {{"radius", c.radius}, {"depth", c.depth},
                       {"eta", c.eta.empty() ? "measured" : c.eta}, {"p", c.p},
                       {"shift", c.shift}});
  doc["certificate"] = cli::to_json(cert);
  return emit(c, std::move(doc), cert.validates);
}

int cmd_verify_patterns(const Config& c) {
  std::optional<NamedGroup> storage;
  const auto& g = select_group(c.group, storage);
  if (!is_builtin(g) || g.name != "I") throw PreconditionError("patterns are defined for group I");
  const Report r = verify_patterns(parse_catalog(c.catalog));
  auto doc = envelope("verify patterns", c, {{"catalog", c.catalog}});
  doc["report"] = cli::to_json(r);
  return emit(c, std::move(doc), r.passed());
}

int cmd_badstrings(const Config& c) {
  const auto census = bad_strings_census(c.max_k, parse_catalog(c.catalog));
  const Report r = verify_census(census);
  auto doc = envelope("badstrings", c, {{"max_k", c.max_k}, {"catalog", c.catalog}});
  doc["census"] = cli::to_json(census);
  doc["report"] = cli::to_json(r);
  return emit(c, std::move(doc), r.passed());
}

int cmd_badcount(const Config& c) {
  std::optional<NamedGroup> storage;
  const auto& g = select_group(c.group, storage);
  Ball ball(g.working_set(), ball_options(c));
  const auto n = count_bad_elements(g, ball, c.radius, parse_rational(c.epsilon),
                                    parse_catalog(c.catalog), c.max_k, c.word_cap);
  auto doc = envelope("badcount", c,
                      {{"radius", c.radius}, {"epsilon", c.epsilon}, {"catalog", c.catalog}});
  doc["count"] = cli::to_json(n);
  return emit(c, std::move(doc), BigInt(n.bad) <= n.stated_bound);
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  c.threads = default_threads();

  CLI::App app{"Self-similar groups on the binary tree: word problem, growth and the "
               "length-reduction lemmas for G, H and I."};
  app.set_version_flag("--version", SELFSIM_VERSION);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", c.group, "G, H, I or file:<path>")->capture_default_str();
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--threads", c.threads, "worker threads (default $SELFSIM_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-entries", c.max_entries, "ball entry budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  auto* lemmas = app.add_subcommand("check-lemmas", "verify the structure lemmas of a group");
  common(lemmas);

  auto* ball = app.add_subcommand("ball", "list the ball of a given radius as CSV");
  common(ball);
  ball->add_option("--radius", c.radius)->required()->check(CLI::NonNegativeNumber);

  auto* growth = app.add_subcommand("growth", "growth function as CSV");
  common(growth);
  growth->add_option("--max-radius", c.max_radius)->required()->check(CLI::NonNegativeNumber);
  growth->add_option("--step", c.step)->check(CLI::PositiveNumber)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "finite checks of the reduction hypotheses");
  verify->require_subcommand(1);
  auto* reduction = verify->add_subcommand("reduction", "length reduction under splitting");
  common(reduction);
  reduction->add_option("--radius", c.radius)->check(CLI::PositiveNumber)->capture_default_str();
  reduction->add_option("--depth", c.depth)->check(CLI::PositiveNumber)->capture_default_str();
  reduction->add_option("--eta", c.eta, "p/q (default 7/8)");
  reduction->add_option("--shift", c.shift, "(default 3)")->check(CLI::NonNegativeNumber);
  auto* basic = verify->add_subcommand("basictool", "proportion of reducing stabiliser elements");
  common(basic);
  basic->add_option("--radius", c.radius)->check(CLI::PositiveNumber)->capture_default_str();
  basic->add_option("--depth", c.depth)->check(CLI::PositiveNumber)->capture_default_str();
  basic->add_option("--eta", c.eta, "p/q (default: measured)");
  basic->add_option("--p", c.p, "p/q")->capture_default_str();
  basic->add_option("--shift", c.shift)->check(CLI::NonNegativeNumber)->capture_default_str();
  auto* patterns = verify->add_subcommand("patterns", "symbolic check of the block patterns");
  common(patterns);
  patterns->add_option("--catalog", c.catalog, "standard or completed")->capture_default_str();

  auto* bad = app.add_subcommand("badstrings", "census of words without good blocks");
  bad->add_option("--max-k", c.max_k)->check(CLI::PositiveNumber)->capture_default_str();
  bad->add_option("--catalog", c.catalog, "standard or completed")->capture_default_str();
  bad->add_option("--out", c.out, "output file (default stdout)");

  auto* count = app.add_subcommand("badcount", "count epsilon-bad elements in a ball");
  common(count);
  count->add_option("--radius", c.radius)->check(CLI::PositiveNumber)->capture_default_str();
  count->add_option("--epsilon", c.epsilon, "p/q in (0, 1)")->capture_default_str();
  count->add_option("--catalog", c.catalog, "standard or completed")->capture_default_str();
  count->add_option("--max-k", c.max_k, "census depth for the bad-strings bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  count->add_option("--word-cap", c.word_cap, "geodesic words per element")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*lemmas) return cmd_check_lemmas(c);
    if (*ball) return cmd_ball(c);
    if (*growth) return cmd_growth(c);
    if (*reduction) return cmd_verify_reduction(c);
    if (*basic) return cmd_verify_basictool(c);
    if (*patterns) return cmd_verify_patterns(c);
    if (*bad) return cmd_badstrings(c);
    if (*count) return cmd_badcount(c);
  } catch (const BudgetExceeded& e) {
    std::cerr << "selfsim: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    std::cerr << "selfsim: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "selfsim: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "selfsim: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
