#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "nonblock/adversary.hpp"
#include "nonblock/bounds.hpp"
#include "nonblock/error.hpp"
#include "nonblock/lpcert.hpp"
#include "oracles.hpp"

using namespace nonblock;

namespace {

// The LP read back from its text form.
struct ParsedLp {
  std::vector<std::string> objective;
  struct Row {
    std::string name;
    std::vector<std::string> vars;
    Rational rhs;
  };
  std::vector<Row> rows;
  std::map<std::string, Rational> upper;
  std::map<std::string, bool> lower_zero;
};

ParsedLp parse_lp(const std::string& text) {
  ParsedLp lp;
  std::istringstream in(text);
  std::string section, tok;
  std::vector<std::string> toks;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '\\') continue;
    if (line == "Maximize" || line == "Subject To" || line == "Bounds" || line == "End") {
      section = line;
      continue;
    }
    std::istringstream ls(line);
    while (ls >> tok) toks.push_back(tok);
    // Rows and the objective may wrap; a row is complete once it has "<=".
    if (section == "Maximize") {
      for (const auto& x : toks)
        if (x != "obj:" && x != "+") lp.objective.push_back(x);
      toks.clear();
    } else if (section == "Subject To") {
      auto le = std::find(toks.begin(), toks.end(), "<=");
      if (le == toks.end()) continue;
      ParsedLp::Row r;
      r.name = toks[0].substr(0, toks[0].size() - 1);
      for (auto it = toks.begin() + 1; it != le; ++it)
        if (*it != "+") r.vars.push_back(*it);
      r.rhs = Rational::parse(*(le + 1));
      lp.rows.push_back(r);
      toks.clear();
    } else if (section == "Bounds") {
      if (toks.size() == 5) {
        lp.lower_zero[toks[2]] = true;
        lp.upper[toks[2]] = Rational::parse(toks[4]);
      } else {
        lp.lower_zero[toks[0]] = true;
      }
      toks.clear();
    }
  }
  return lp;
}

bool lp_feasible(const ParsedLp& lp, const std::map<std::string, Rational>& x) {
  for (const auto& [name, z] : lp.lower_zero)
    if (z && x.at(name) < 0) return false;
  for (const auto& [name, u] : lp.upper)
    if (x.at(name) > u) return false;
  for (const auto& r : lp.rows) {
    Rational s;
    for (const auto& v : r.vars) s += x.at(v);
    if (s > r.rhs) return false;
  }
  return true;
}

std::map<std::string, Rational> named(const LpInstance& inst, const PrimalSolution& x) {
  std::map<std::string, Rational> out;
  for (std::size_t i = 0; i < inst.uw.size(); ++i)
    out["x_u" + std::to_string(inst.uw[i].first) + "_w" + std::to_string(inst.uw[i].second)] = x.x_uw[i];
  for (std::size_t i = 0; i < inst.uv.size(); ++i)
    out["x_u" + std::to_string(inst.uv[i].first) + "_v" + std::to_string(inst.uv[i].second)] = x.x_uv[i];
  return out;
}

// (u, v) conflicts with the multicast tree of (a, B) when some wired branch
// shares an interstage link (link blocking) or a switching element.
bool conflicts(int d, int n, Mode mode, std::uint64_t a, const std::vector<std::uint64_t>& B, std::uint64_t u,
               std::uint64_t v) {
  const auto route = oracle::wired_route(DaryString::from_index(d, n, u), DaryString::from_index(d, n, v));
  for (auto b : B) {
    const auto tree = oracle::wired_route(DaryString::from_index(d, n, a), DaryString::from_index(d, n, b));
    if (mode == Mode::LinkBlocking ? oracle::share_link(route, tree) : oracle::share_se(route, tree)) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("lpcert") {
  TEST_CASE("variables are exactly the conflicting branches") {
    std::mt19937_64 rng(21);
    for (auto [d, n] : {std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 3}})
      for (int t = 0; t < n; ++t)
        for (auto mode : {Mode::LinkBlocking, Mode::CrosstalkFree})
          for (int trial = 0; trial < 4; ++trial) {
            const auto N = ipow(d, n);
            const std::uint64_t a = rng() % static_cast<std::uint64_t>(N);
            const std::uint64_t window = rng() % static_cast<std::uint64_t>(ipow(d, n - t));
            const auto width = static_cast<std::uint64_t>(ipow(d, t));
            std::vector<std::uint64_t> B;
            for (std::uint64_t o = 0; o < width; ++o)
              if (B.empty() || rng() % 2) B.push_back(window * width + o);
            const auto inst = build_instance(d, n, t, static_cast<std::int64_t>(B.size()), a, B, mode);
            for (std::uint64_t u = 0; u < static_cast<std::uint64_t>(N); ++u) {
              if (u == a) continue;
              for (std::uint64_t v = 0; v < static_cast<std::uint64_t>(N); ++v) {
                if (std::find(B.begin(), B.end(), v) != B.end()) continue;
                const bool want = conflicts(d, n, mode, a, B, u, v);
                const auto w = v / width;
                const bool have = w == window ? inst.uv_index(u, v) >= 0 : inst.uw_index(u, w) >= 0;
                CAPTURE(d);
                CAPTURE(n);
                CAPTURE(t);
                CAPTURE(u);
                CAPTURE(v);
                CHECK(have == want);
              }
            }
          }
  }

  TEST_CASE("t = n has no foreign-window variables") {
    const auto inst = canonical_instance(2, 4, 4, 4, 3, Mode::LinkBlocking);
    CHECK(inst.uw.empty());
    CHECK_FALSE(inst.uv.empty());
  }

  TEST_CASE("crosstalk-free variables contain the link-blocking ones") {
    for (int t = 0; t <= 4; ++t) {
      const auto link = canonical_instance(2, 4, t, 1, 1, Mode::LinkBlocking);
      const auto cf = canonical_instance(2, 4, t, 1, 1, Mode::CrosstalkFree);
      for (const auto& [u, w] : link.uw) CHECK(cf.uw_index(u, w) >= 0);
      for (const auto& [u, v] : link.uv) CHECK(cf.uv_index(u, v) >= 0);
      CHECK(cf.uw.size() + cf.uv.size() > link.uw.size() + link.uv.size());
    }
  }

  TEST_CASE("zero primal is feasible and worth zero") {
    const auto inst = canonical_instance(2, 4, 1, 2, 2, Mode::LinkBlocking);
    const auto x = zero_primal(inst);
    CHECK(primal_violations(inst, x).empty());
    CHECK(primal_objective(inst, x) == 0);
    const auto y = dual_family(inst, 0, 3);
    CHECK(check_weak_duality(inst, x, y) == dual_objective(inst, y));
  }

  TEST_CASE("zero dual names DC-1") {
    const auto inst = canonical_instance(2, 4, 1, 1, 1, Mode::LinkBlocking);
    const auto y = zero_dual(inst);
    const auto v = dual_violations(inst, y);
    REQUIRE_FALSE(v.empty());
    CHECK(v.front().constraint == "DC-1");
    try {
      check_dual(inst, y);
      FAIL("expected CertificateError");
    } catch (const CertificateError& e) {
      CHECK(e.constraint() == "DC-1");
    }
  }

  TEST_CASE("negative dual value is reported") {
    const auto inst = canonical_instance(2, 3, 1, 1, 1, Mode::LinkBlocking);
    auto y = dual_family(inst, 0, 2);
    y.alpha[0] = Rational(-1);
    bool nonneg = false;
    for (const auto& v : dual_violations(inst, y, 100)) nonneg = nonneg || v.constraint == "nonneg";
    CHECK(nonneg);
  }

  TEST_CASE("family duals are feasible and priced by the cost table") {
    for (auto [d, n] : {std::pair{2, 4}, std::pair{3, 3}})
      for (int t = 0; t < n; ++t)
        for (std::int64_t f : {std::int64_t{1}, std::int64_t{2}, ipow(d, n)})
          for (auto mode : {Mode::LinkBlocking, Mode::CrosstalkFree})
            for (std::int64_t k = 1; k <= std::min(f, ipow(d, t)); ++k) {
              const auto inst = canonical_instance(d, n, t, f, k, mode);
              for (int p = 0; p <= max_p(mode, n, t); ++p)
                for (int q = n - t; q <= n; ++q) {
                  const auto y = dual_family(inst, p, q);
                  CAPTURE(d);
                  CAPTURE(n);
                  CAPTURE(t);
                  CAPTURE(f);
                  CAPTURE(k);
                  CAPTURE(p);
                  CAPTURE(q);
                  CHECK(dual_violations(inst, y).empty());
                  CHECK(union_bound_objective(inst, y) == cost(mode, d, n, t, f, k, p, q));
                  CHECK(dual_objective(inst, y) <= union_bound_objective(inst, y));
                }
            }
  }

  TEST_CASE("special duals at t = n") {
    for (int n = 2; n <= 5; ++n)
      for (std::int64_t f : {std::int64_t{1}, std::int64_t{2}, ipow(2, n)})
        for (auto mode : {Mode::LinkBlocking, Mode::CrosstalkFree})
          for (std::int64_t k = 1; k <= f; k = k * 2 + 1) {
            const auto inst = canonical_instance(2, n, n, f, k, mode);
            const auto y = dual_special_t_eq_n(inst);
            CAPTURE(n);
            CAPTURE(f);
            CAPTURE(k);
            CHECK(dual_violations(inst, y).empty());
            CHECK(1 + dual_objective(inst, y).ceil() <= multilog_m_sufficient(mode, 2, n, n, f));
          }
    const auto inst = canonical_instance(2, 4, 2, 1, 1, Mode::LinkBlocking);
    CHECK_THROWS_AS(dual_special_t_eq_n(inst), ArgumentError);
    const auto full = canonical_instance(2, 4, 4, 1, 1, Mode::LinkBlocking);
    CHECK_THROWS_AS(dual_special_t_eq_n(full, SpecialVariant::CfAllOutputs), ArgumentError);
  }

  TEST_CASE("blocked states satisfy weak duality") {
    std::mt19937_64 rng(33);
    int blocked_seen = 0;
    for (int trial = 0; trial < 40; ++trial) {
      MultilogConfig cfg{2, 4, 4, 1, 2, trial % 2 ? Mode::CrosstalkFree : Mode::LinkBlocking, PlanePolicy::random(7)};
      MultilogSim sim(cfg);
      const std::uint64_t a = rng() % 16;
      const std::uint64_t w = rng() % 8;
      std::vector<std::uint64_t> B{2 * w};
      if (rng() % 2) B.push_back(2 * w + 1);
      const auto inst = build_instance(2, 4, 1, 2, a, B, cfg.mode);
      Rational best;
      bool first = true;
      for (int p = 0; p <= max_p(cfg.mode, 4, 1); ++p)
        for (int q = 3; q <= 4; ++q) {
          const auto o = dual_objective(inst, dual_family(inst, p, q));
          if (first || o < best) best = o;
          first = false;
        }
      multilog_background(sim, a, B, rng, 60, [&](const MultilogSim& s) {
        const auto x = primal_from_state(s, inst);
        CHECK(primal_violations(inst, x).empty());
        CHECK(primal_objective(inst, x) <= best);
        blocked_seen += primal_objective(inst, x) > 0;
      });
    }
    CHECK(blocked_seen > 0);
  }

  TEST_CASE("exported LP reads back to the same constraints") {
    std::mt19937_64 rng(5);
    for (auto mode : {Mode::LinkBlocking, Mode::CrosstalkFree})
      for (int t = 0; t <= 3; ++t) {
        const auto inst = canonical_instance(2, 3, t, 2, 1, mode);
        const auto lp = parse_lp(export_lp(inst));
        CHECK(lp.objective.size() == inst.uw.size() + inst.uv.size());
        CHECK(lp.lower_zero.size() == inst.uw.size() + inst.uv.size());
        for (int trial = 0; trial < 300; ++trial) {
          auto x = zero_primal(inst);
          const int den = 1 + static_cast<int>(rng() % 3);
          for (auto& v : x.x_uw) v = Rational(static_cast<std::int64_t>(rng() % (den + 2)), den);
          for (auto& v : x.x_uv) v = rng() % 3 == 0 ? Rational(static_cast<std::int64_t>(rng() % (den + 1)), den) : Rational(0);
          CHECK(lp_feasible(lp, named(inst, x)) == primal_violations(inst, x).empty());
        }
      }
  }
}
