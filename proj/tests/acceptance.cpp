// Acceptance gate: one PASS/FAIL line per criterion. Exit status 1 when any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "nonblock/adversary.hpp"
#include "nonblock/banyan.hpp"
#include "nonblock/bounds.hpp"
#include "nonblock/clos.hpp"
#include "nonblock/dwec.hpp"
#include "nonblock/error.hpp"
#include "nonblock/lpcert.hpp"
#include "nonblock/multilog.hpp"
#include "nonblock/sweep.hpp"
#include "oracles.hpp"

using namespace nonblock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr std::uint64_t kSeed = 20240601;

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// ----------------------------------------------------------------------- 1

Outcome criterion_clos() {
  constexpr int kTraces = 10000;
  constexpr int kEvents = 60;
  std::int64_t traces = 0, arrivals = 0, blocked = 0, constructions = 0, constructed_blocks = 0;
  std::int64_t greedy_sweep_blocked = 0;
  std::vector<std::array<int, 2>> grid;
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= 4; ++r) grid.push_back({n, r});
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto [n, r] = grid[g];
    const auto cfg = ClosConfig::symmetric(n, static_cast<int>(clos_snb(n)), r);
    for (Adversary adv : {Adversary::Random, Adversary::Greedy}) {
      auto stats = parallel_map<TrialStats>(
          kTraces,
          [&](std::size_t i) {
            auto rng = trial_rng(kSeed + g * 2 + (adv == Adversary::Greedy), i);
            return clos_snb_trial(cfg, adv, rng, kEvents);
          },
          default_threads());
      for (const auto& s : stats) {
        ++traces;
        arrivals += s.arrivals;
        blocked += s.blocked;
      }
    }
    if (n >= 2 && r >= 2) {
      ++constructions;
      if (clos_greedy_blocks(n, 2 * n - 2, r)) ++constructed_blocks;
      for (int i = 0; i < 200; ++i) {
        auto rng = trial_rng(kSeed + 100 + g, static_cast<std::uint64_t>(i));
        greedy_sweep_blocked +=
            clos_snb_trial(ClosConfig::symmetric(n, 2 * n - 2, r), Adversary::Greedy, rng, kEvents).blocked;
      }
    }
  }
  return {blocked == 0 && constructions > 0 && constructed_blocks == constructions,
          str(traces) + " traces at m=2n-1 (n,r<=4), " + str(arrivals) + " arrivals, " + str(blocked) +
              " blocked; greedy construction blocks m=2n-2 in " + str(constructed_blocks) + "/" + str(constructions) +
              " configs; random greedy traces at m=2n-2 blocked " + str(greedy_sweep_blocked) + " times"};
}

// ----------------------------------------------------------------------- 2

Outcome criterion_benes() {
  constexpr int kTraces = 10000;
  constexpr int kEvents = 60;
  std::int64_t traces = 0, blocked = 0, violations = 0;
  for (int n = 1; n <= 8; ++n) {
    const int m = static_cast<int>(clos_wsnb_r2(n));
    auto stats = parallel_map<BenesTrialStats>(
        kTraces,
        [&](std::size_t i) {
          auto rng = trial_rng(kSeed + 200 + static_cast<std::uint64_t>(n), i);
          return benes_trial(n, m, rng, kEvents);
        },
        default_threads());
    for (const auto& s : stats) {
      ++traces;
      blocked += s.stats.blocked;
      violations += s.invariant_violations;
    }
  }
  std::string found;
  bool all_found = true;
  for (int n = 2; n <= 4; ++n) {
    const int m = static_cast<int>(clos_wsnb_r2(n)) - 1;
    const auto path = benes_blocking_search(n, m, 20);
    const bool ok = path && replay_benes(n, m, *path);
    all_found = all_found && ok;
    found += " n=" + str(n) + ":" + (ok ? "depth " + str(path->size()) : std::string("none"));
  }
  return {blocked == 0 && violations == 0 && all_found,
          str(traces) + " traces at m=floor(3n/2) (n<=8), " + str(blocked) + " blocked, " + str(violations) +
              " union-invariant violations; blocking at floor(3n/2)-1:" + found};
}

// ----------------------------------------------------------------------- 3

// Depth-first search over every event sequence, pruned by vertex relabeling
// symmetry: two states that agree up to a permutation of the 4 vertices (live
// edges with their colors, running maxima, running optimum) have identical
// futures.
struct ExhaustiveDwec {
  struct Key {
    std::array<std::uint16_t, 8> edges{};
    std::uint8_t count = 0;
    std::int64_t w_num = 0, w_den = 1, delta = 0, opt = 0;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = k.count;
      for (auto e : k.edges) h = h * 1000003u + e;
      for (auto x : {k.w_num, k.w_den, k.delta, k.opt}) h = h * 1000003u + static_cast<std::size_t>(x);
      return h;
    }
  };

  std::array<Rational, 3> weights{Rational(1, 4), Rational(41, 100), Rational(3, 5)};
  std::array<std::array<int, 2>, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  std::vector<std::array<int, 4>> perms;
  std::unordered_map<Key, int, KeyHash> opt_cache;
  std::unordered_map<Key, int, KeyHash> seen;  // canonical state -> largest remaining depth explored
  std::int64_t sequences = 0;
  std::int64_t failures = 0;
  std::string first_failure;
  Rational tightest{1000};

  ExhaustiveDwec() {
    std::array<int, 4> p{0, 1, 2, 3};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }

  int weight_index(const Rational& w) const {
    for (int i = 0; i < 3; ++i)
      if (weights[static_cast<std::size_t>(i)] == w) return i;
    return -1;
  }

  static int pair_index(int a, int b) {
    static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[a][b];
  }

  // Edge multiset packed as (pair, weight, color), minimized over relabelings.
  Key canonical(const DwecState& s, bool with_colors) const {
    std::array<std::array<int, 3>, 8> raw{};
    std::size_t count = 0;
    for (const auto& [id, edge] : s.live())
      raw[count++] = {edge.u, edge.v, (weight_index(edge.w) << 10) | (with_colors ? edge.color + 1 : 0)};
    Key best;
    best.count = static_cast<std::uint8_t>(count);
    bool first = true;
    for (const auto& p : perms) {
      std::array<std::uint16_t, 8> e{};
      for (std::size_t i = 0; i < count; ++i) {
        const int pr = pair_index(p[static_cast<std::size_t>(raw[i][0])], p[static_cast<std::size_t>(raw[i][1])]);
        const auto code = static_cast<std::uint16_t>((pr << 12) | raw[i][2]);
        std::size_t j = i;
        for (; j > 0 && e[j - 1] > code; --j) e[j] = e[j - 1];
        e[j] = code;
      }
      if (first || e < best.edges) best.edges = e;
      first = false;
    }
    return best;
  }

  int opt(const DwecState& s) {
    const Key key = canonical(s, false);
    auto it = opt_cache.find(key);
    if (it != opt_cache.end()) return it->second;
    std::vector<WeightedEdge> edges;
    for (const auto& [id, e] : s.live()) edges.push_back({e.u, e.v, e.w});
    const int v = opt_exact(edges);
    opt_cache.emplace(key, v);
    return v;
  }

  void check(const DwecState& s, int opt_bar) {
    const Rational limit = Rational(227, 40) * Rational(opt_bar) + Rational(9, 5);
    const Rational used(s.colors_used());
    bool ok = used <= limit && dwec_class_sizes_ok(s) && s.opt_lower() <= opt_bar;
    try {
      s.audit();
    } catch (const std::logic_error&) {
      ok = false;
    }
    if (opt_bar > 0) tightest = min(tightest, limit - used);
    if (!ok && failures++ == 0) first_failure = "colors=" + str(used) + " opt=" + str(opt_bar);
  }

  // Visits the state reached after an event; `remaining` more events follow.
  void visit(const DwecState& s, int opt_bar, int remaining, std::uint64_t next_id) {
    ++sequences;
    Key key = canonical(s, true);
    key.w_num = s.w_bar().num();
    key.w_den = s.w_bar().den();
    key.delta = s.delta_bar();
    key.opt = opt_bar;
    auto [it, fresh] = seen.emplace(key, remaining);
    if (fresh) {
      check(s, opt_bar);
    } else {
      if (it->second >= remaining) return;
      it->second = remaining;
    }
    if (remaining == 0) return;
    // Relabelings fixing the colored edge multiset; children related by one
    // of them are equivalent, so only one child per orbit is expanded.
    std::vector<std::array<int, 3>> live_codes;
    for (const auto& [id, e] : s.live())
      live_codes.push_back({pair_index(e.u, e.v), weight_index(e.w), e.color});
    std::sort(live_codes.begin(), live_codes.end());
    std::vector<const std::array<int, 4>*> stabilizer;
    for (const auto& p : perms) {
      std::vector<std::array<int, 3>> mapped;
      for (const auto& [id, e] : s.live())
        mapped.push_back({pair_index(p[static_cast<std::size_t>(e.u)], p[static_cast<std::size_t>(e.v)]),
                          weight_index(e.w), e.color});
      std::sort(mapped.begin(), mapped.end());
      if (mapped == live_codes) stabilizer.push_back(&p);
    }
    auto orbit_rep = [&](int u, int v) {
      int best = pair_index(u, v);
      for (const auto* p : stabilizer)
        best = std::min(best, pair_index((*p)[static_cast<std::size_t>(u)], (*p)[static_cast<std::size_t>(v)]));
      return best;
    };
    for (const auto& pr : pairs) {
      if (orbit_rep(pr[0], pr[1]) != pair_index(pr[0], pr[1])) continue;
      for (const auto& w : weights) {
        DwecState c = s;
        try {
          c.arrive(next_id, pr[0], pr[1], w);
        } catch (const ColoringFailure&) {
          if (failures++ == 0) first_failure = "coloring failure";
          continue;
        }
        visit(c, std::max(opt_bar, opt(c)), remaining - 1, next_id + 1);
      }
    }
    std::set<std::array<int, 3>> departed;
    for (const auto& [id, e] : s.live()) {
      if (!departed.insert({orbit_rep(e.u, e.v), weight_index(e.w), e.color}).second) continue;
      DwecState c = s;
      c.depart(id);
      visit(c, opt_bar, remaining - 1, next_id);
    }
  }
};

Outcome criterion_dwec() {
  // (a), (b): random events on random base graphs.
  constexpr int kTrials = 200;
  constexpr int kEvents = 500;
  auto stats = parallel_map<DwecTrialStats>(
      kTrials,
      [&](std::size_t i) {
        auto rng = trial_rng(kSeed + 300, i);
        const int vertices = 2 + static_cast<int>(i % 7);
        const int den = i % 2 ? 60 : 1000;
        return dwec_trial(DwecScheme::four_type(), vertices, den, rng, kEvents);
      },
      default_threads());
  std::int64_t events = 0, fail_color = 0, fail_audit = 0, fail_size = 0;
  for (const auto& s : stats) {
    events += s.events;
    fail_color += s.coloring_failures;
    fail_audit += s.audit_failures;
    fail_size += s.class_size_failures;
  }
  const bool ab = events >= 100000 && fail_color == 0 && fail_audit == 0 && fail_size == 0;

  // (c): every event sequence of at most 8 arrivals/departures on K_4.
  ExhaustiveDwec ex;
  DwecState empty(DwecScheme::four_type(), 4);
  ex.visit(empty, 0, 8, 1);
  const bool c = ex.failures == 0 && ex.seen.size() > 1;

  // (d)
  const auto four = derive_constants({Rational(1, 2), Rational(2, 5), Rational(1, 3)});
  const auto five = derive_constants({Rational(1, 2), Rational(2, 5), Rational(1, 3), Rational(11, 43)});
  const bool d = four.objective == Rational(227, 40);

  return {ab && c && d, "(a,b) " + str(events) + " events, coloring/audit/class-size failures " + str(fail_color) +
                            "/" + str(fail_audit) + "/" + str(fail_size) + "; (c) " + str(ex.sequences) +
                            " sequence prefixes of <= 8 events on K_4 reaching " + str(ex.seen.size()) + " distinct states, " + str(ex.failures) +
                            " violations, min slack " + ex.tightest.str() + (ex.first_failure.empty() ? "" : " first: " + ex.first_failure) +
                            "; (d) 4-type " + four.objective.str() + ", 5-type derived " + five.objective.str() + " (" +
                            str(five.objective.to_double()) + ", stated 5.6355)"};
}

// ----------------------------------------------------------------------- 4

struct GridPoint {
  int d, n, t;
  std::int64_t f;
  Mode mode;
};

std::vector<GridPoint> cert_grid(bool include_t_eq_n) {
  std::vector<GridPoint> out;
  for (int d : {2, 3})
    for (int n : {3, 4, 5})
      for (int t = 0; t <= (include_t_eq_n ? n : n - 1); ++t)
        for (std::int64_t f : {std::int64_t{1}, std::int64_t{2}, std::int64_t{4}, ipow(d, n)})
          for (Mode mode : {Mode::LinkBlocking, Mode::CrosstalkFree}) out.push_back({d, n, t, f, mode});
  return out;
}

Outcome criterion_certificates() {
  struct Tally {
    std::int64_t checks = 0, infeasible = 0, mismatch = 0;
    std::string first;
  };
  const auto grid = cert_grid(true);
  auto tallies = parallel_map<Tally>(
      grid.size(),
      [&](std::size_t g) {
        const auto& gp = grid[g];
        Tally t;
        for (std::int64_t k = 1; k <= std::min(gp.f, ipow(gp.d, gp.t)); ++k) {
          const auto inst = canonical_instance(gp.d, gp.n, gp.t, gp.f, k, gp.mode);
          auto note = [&](const std::string& what) {
            if (t.first.empty())
              t.first = what + " at d=" + str(gp.d) + " n=" + str(gp.n) + " t=" + str(gp.t) + " f=" + str(gp.f) +
                        " k=" + str(k) + " " + to_string(gp.mode);
          };
          if (gp.t == gp.n) {
            ++t.checks;
            const auto y = dual_special_t_eq_n(inst);
            if (!dual_violations(inst, y, 1).empty()) ++t.infeasible, note("infeasible special dual");
            continue;
          }
          for (int p = 0; p <= max_p(gp.mode, gp.n, gp.t); ++p)
            for (int q = gp.n - gp.t; q <= gp.n; ++q) {
              ++t.checks;
              const auto y = dual_family(inst, p, q);
              const auto v = dual_violations(inst, y, 1);
              if (!v.empty()) ++t.infeasible, note(v.front().detail);
              if (union_bound_objective(inst, y) != cost(gp.mode, gp.d, gp.n, gp.t, gp.f, k, p, q))
                ++t.mismatch, note("objective mismatch p=" + str(p) + " q=" + str(q));
            }
        }
        return t;
      },
      default_threads());
  Tally all;
  for (const auto& t : tallies) {
    all.checks += t.checks;
    all.infeasible += t.infeasible;
    all.mismatch += t.mismatch;
    if (all.first.empty()) all.first = t.first;
  }
  return {all.infeasible == 0 && all.mismatch == 0 && all.checks > 0,
          str(all.checks) + " certificates over " + str(grid.size()) + " grid points, " + str(all.infeasible) +
              " infeasible, " + str(all.mismatch) + " objective mismatches" +
              (all.first.empty() ? "" : "; first: " + all.first)};
}

// ----------------------------------------------------------------------- 5

Outcome criterion_dominance() {
  std::int64_t points = 0, failures = 0, fractional = 0, printed_differs = 0;
  std::string first, findings;
  for (const auto& gp : cert_grid(true)) {
    ++points;
    if (gp.t == gp.n) {
      // The t = n corollaries against the best special certificate.
      Rational worst(0);
      for (std::int64_t k = 1; k <= std::min(gp.f, ipow(gp.d, gp.n)); ++k) {
        const auto inst = canonical_instance(gp.d, gp.n, gp.t, gp.f, k, gp.mode);
        worst = max(worst, dual_objective(inst, dual_special_t_eq_n(inst)));
      }
      const auto m = multilog_m_sufficient(gp.mode, gp.d, gp.n, gp.t, gp.f);
      if (1 + worst.ceil() > m) {
        ++failures;
        if (first.empty()) first = "t=n d=" + str(gp.d) + " n=" + str(gp.n) + " f=" + str(gp.f);
      }
      continue;
    }
    const auto e = sufficient_m_enumerated(gp.d, gp.n, gp.t, gp.f, gp.mode);
    const auto b = table_bound(gp.mode, gp.d, gp.n, gp.t, gp.f);
    if (e.m_sufficient > b.m_sufficient) {
      ++failures;
      if (first.empty())
        first = "d=" + str(gp.d) + " n=" + str(gp.n) + " t=" + str(gp.t) + " f=" + str(gp.f) + " " +
                to_string(gp.mode) + " enumerated " + e.max_min.str() + " table " + b.value.str();
    } else if (e.max_min > b.value) {
      ++fractional;
    }
    if (gp.mode == Mode::CrosstalkFree) {
      const auto printed = G_bound(gp.d, gp.n, gp.t, gp.f, GForm::Printed);
      if (printed.value != b.value) {
        ++printed_differs;
        if (e.m_sufficient > printed.m_sufficient && findings.size() < 400)
          findings += " [printed " + printed.branch + " d=" + str(gp.d) + " n=" + str(gp.n) + " t=" + str(gp.t) +
                      " f=" + str(gp.f) + ": " + printed.value.str() + " < enumerated " + e.max_min.str() + "]";
      }
    }
  }
  return {failures == 0,
          str(points) + " grid points, " + str(failures) + " with 1+ceil(max-min) > table m; findings: " +
              str(fractional) + " points where the table value sits below max-min by less than one, " +
              str(printed_differs) + " crosstalk-free points where the printed rows differ from the derived rows" +
              (findings.empty() ? "" : ";" + findings) + (first.empty() ? "" : "; first failure: " + first)};
}

// ----------------------------------------------------------------------- 6

Outcome criterion_multilog() {
  constexpr int kTraces = 10000;
  struct Config {
    int n, t;
    std::int64_t f;
    Mode mode;
  };
  std::vector<Config> grid;
  for (int n : {3, 4})
    for (int t = 0; t < n; ++t)
      for (std::int64_t f : {1, 2, 4})
        for (Mode mode : {Mode::LinkBlocking, Mode::CrosstalkFree}) grid.push_back({n, t, f, mode});
  grid.push_back({4, 4, 1, Mode::LinkBlocking});
  std::int64_t traces = 0, arrivals = 0, blocked = 0;
  int max_unavailable_gap = 1 << 30;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto& c = grid[g];
    MultilogConfig cfg;
    cfg.d = 2;
    cfg.n = c.n;
    cfg.t = c.t;
    cfg.f = c.f;
    cfg.mode = c.mode;
    cfg.m = static_cast<int>(multilog_m_sufficient(c.mode, 2, c.n, c.t, c.f));
    const int events = 2 << c.n;
    auto stats = parallel_map<TrialStats>(
        kTraces,
        [&](std::size_t i) {
          auto rng = trial_rng(kSeed + 600 + g, i);
          return multilog_trial(cfg, i % 2 ? Adversary::Greedy : Adversary::Random, rng, events);
        },
        default_threads());
    int worst = 0;
    for (const auto& s : stats) {
      ++traces;
      arrivals += s.arrivals;
      blocked += s.blocked;
      worst = std::max(worst, s.max_unavailable);
    }
    max_unavailable_gap = std::min(max_unavailable_gap, cfg.m - worst);
  }
  struct Spec {
    const char* name;
    std::int64_t got;
    std::int64_t want;
  };
  const std::vector<Spec> specs{
      {"hwang", multilog_m_sufficient(Mode::LinkBlocking, 2, 4, 4, 1), 5},
      {"hwang-closed-form", hwang_unicast(2, 4), 5},
      {"wang07", C_bound(2, 4, 0, 2).m_sufficient, 6},
      {"wang07-closed-form", wang07(2, 4, 2).ceil(), 6},
      {"danilewicz", C_bound(2, 4, 1, 16).m_sufficient, 6},
      {"danilewicz-closed-form", danilewicz(2, 4, 1).ceil(), 6},
      {"crosstalk-free-window", G_bound(2, 4, 1, 16).m_sufficient, 12},
      {"crosstalk-free-window-closed-form", cf_wsnb_window(2, 4, 1).ceil(), 12},
  };
  std::string spec_text;
  bool specs_ok = true;
  for (const auto& s : specs) {
    specs_ok = specs_ok && s.got == s.want;
    spec_text += " " + std::string(s.name) + "=" + str(s.got);
  }
  return {blocked == 0 && specs_ok, str(traces) + " traces over " + str(grid.size()) + " configs, " + str(arrivals) +
                                        " arrivals, " + str(blocked) + " blocked, min spare planes " +
                                        str(max_unavailable_gap) + ";" + spec_text};
}

// ----------------------------------------------------------------------- 7

Outcome criterion_weak_duality() {
  constexpr int kRuns = 10;
  constexpr int kEventsPerRun = 100;
  std::vector<GridPoint> grid;
  for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 3}})
    for (int t = 0; t < n; ++t)
      for (std::int64_t f : {std::int64_t{1}, std::int64_t{2}, std::int64_t{4}, ipow(d, n)})
        for (Mode mode : {Mode::LinkBlocking, Mode::CrosstalkFree}) grid.push_back({d, n, t, f, mode});
  struct Tally {
    std::int64_t states = 0, comparisons = 0, violations = 0, primal_infeasible = 0, blocking_states = 0;
    Rational tightest{1 << 20};
  };
  auto tallies = parallel_map<Tally>(
      grid.size(),
      [&](std::size_t g) {
        const auto& gp = grid[g];
        Tally tl;
        for (int run = 0; run < kRuns; ++run) {
          auto rng = trial_rng(kSeed + 700 + g, static_cast<std::uint64_t>(run));
          const Radix radix(gp.d, gp.n);
          const std::uint64_t size = radix.pow[static_cast<std::size_t>(gp.t)];
          const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::min<std::int64_t>(gp.f, static_cast<std::int64_t>(size))));
          const std::uint64_t window = rng() % radix.pow[static_cast<std::size_t>(gp.n - gp.t)];
          std::vector<std::uint64_t> pool;
          for (std::uint64_t v = window * size; v < (window + 1) * size; ++v) pool.push_back(v);
          std::shuffle(pool.begin(), pool.end(), rng);
          std::vector<std::uint64_t> B(pool.begin(), pool.begin() + k);
          std::sort(B.begin(), B.end());
          const std::uint64_t a = rng() % radix.count();
          const auto inst = build_instance(gp.d, gp.n, gp.t, gp.f, a, B, gp.mode);
          Rational best_dual(1 << 20);
          for (int p = 0; p <= max_p(gp.mode, gp.n, gp.t); ++p)
            for (int q = gp.n - gp.t; q <= gp.n; ++q) {
              const auto y = dual_family(inst, p, q);
              check_dual(inst, y);
              best_dual = min(best_dual, dual_objective(inst, y));
            }
          MultilogConfig cfg;
          cfg.d = gp.d;
          cfg.n = gp.n;
          cfg.t = gp.t;
          cfg.f = gp.f;
          cfg.mode = gp.mode;
          cfg.m = static_cast<int>(multilog_m_sufficient(gp.mode, gp.d, gp.n, gp.t, gp.f)) + 2;
          cfg.policy = PlanePolicy::random(rng());
          MultilogSim sim(cfg);
          multilog_background(sim, a, B, rng, kEventsPerRun, [&](const MultilogSim& s) {
            ++tl.states;
            const auto x = primal_from_state(s, inst);
            if (!primal_violations(inst, x, 1).empty()) ++tl.primal_infeasible;
            const Rational obj = primal_objective(inst, x);
            if (obj > 0) ++tl.blocking_states;
            ++tl.comparisons;
            if (obj > best_dual) ++tl.violations;
            tl.tightest = min(tl.tightest, best_dual - obj);
          });
        }
        return tl;
      },
      default_threads());
  Tally all;
  for (const auto& t : tallies) {
    all.states += t.states;
    all.comparisons += t.comparisons;
    all.violations += t.violations;
    all.primal_infeasible += t.primal_infeasible;
    all.blocking_states += t.blocking_states;
    all.tightest = min(all.tightest, t.tightest);
  }
  return {all.violations == 0 && all.primal_infeasible == 0,
          str(all.states) + " states over " + str(grid.size()) + " grid points (" + str(all.blocking_states) +
              " with blocking planes), " + str(all.violations) + " weak-duality violations, " +
              str(all.primal_infeasible) + " infeasible primals, min gap " + all.tightest.str()};
}

// ----------------------------------------------------------------------- 8

Outcome criterion_oracles() {
  std::int64_t checked = 0, mismatched = 0;
  auto compare = [&](const DaryString& a, const DaryString& b, const DaryString& u, const DaryString& v) {
    const auto r1 = oracle::wired_route(a, b);
    const auto r2 = oracle::wired_route(u, v);
    ++checked;
    if (shares_se(a, b, u, v) != oracle::share_se(r1, r2) || shares_link(a, b, u, v) != oracle::share_link(r1, r2))
      ++mismatched;
  };
  for (int n = 2; n <= 4; ++n) {
    const auto N = static_cast<std::uint64_t>(ipow(2, n));
    for (std::uint64_t a = 0; a < N; ++a)
      for (std::uint64_t b = 0; b < N; ++b)
        for (std::uint64_t u = 0; u < N; ++u)
          for (std::uint64_t v = 0; v < N; ++v)
            compare(DaryString::from_index(2, n, a), DaryString::from_index(2, n, b), DaryString::from_index(2, n, u),
                    DaryString::from_index(2, n, v));
  }
  auto rng = trial_rng(kSeed + 800, 0);
  for (int i = 0; i < 10000; ++i) {
    auto draw = [&] { return DaryString::from_index(3, 3, rng() % 27); };
    compare(draw(), draw(), draw(), draw());
  }
  return {mismatched == 0, str(checked) + " route pairs (d=2 exhaustive n<=4, 10^4 d=3 n=3 samples), " +
                               str(mismatched) + " mismatches"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 Clos strict-sense nonblocking", criterion_clos},
      {"2 Benes wide-sense nonblocking", criterion_benes},
      {"3 DWEC", criterion_dwec},
      {"4 certificate audit", criterion_certificates},
      {"5 table dominance", criterion_dominance},
      {"6 multilog sufficiency", criterion_multilog},
      {"7 weak duality", criterion_weak_duality},
      {"8 oracle equivalence", criterion_oracles},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << name << " [" << buf << "]: " << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
