#include <doctest.h>

#include <random>

#include "nonblock/adversary.hpp"
#include "nonblock/dwec.hpp"
#include "nonblock/error.hpp"
#include "nonblock/exact_lp.hpp"

using namespace nonblock;

namespace {

// Tries every assignment of k colors without pruning.
bool colorable(const std::vector<WeightedEdge>& edges, int k, int vertices) {
  std::vector<int> color(edges.size(), 0);
  while (true) {
    std::vector<std::vector<Rational>> load(static_cast<std::size_t>(vertices), std::vector<Rational>(static_cast<std::size_t>(k), Rational(0)));
    bool ok = true;
    for (std::size_t i = 0; i < edges.size() && ok; ++i)
      for (int x : {edges[i].u, edges[i].v}) {
        auto& l = load[static_cast<std::size_t>(x)][static_cast<std::size_t>(color[i])];
        l += edges[i].w;
        ok = ok && l <= 1;
      }
    if (ok) return true;
    std::size_t pos = 0;
    while (pos < color.size() && ++color[pos] == k) color[pos++] = 0;
    if (pos == color.size()) return false;
  }
}

int brute_opt(const std::vector<WeightedEdge>& edges, int vertices) {
  if (edges.empty()) return 0;
  for (int k = 1;; ++k)
    if (colorable(edges, k, vertices)) return k;
}

}  // namespace

TEST_SUITE("dwec") {
  TEST_CASE("weight types use half-open intervals") {
    const auto four = DwecScheme::four_type();
    const auto five = DwecScheme::five_type();
    CHECK(four.classify(Rational(3, 5)) == 0);
    CHECK(four.classify(Rational(1)) == 0);
    CHECK(four.classify(Rational(1, 2)) == 1);
    CHECK(four.classify(Rational(2, 5)) == 2);
    CHECK(four.classify(Rational(1, 3)) == 3);
    CHECK(four.classify(Rational(3, 10)) == 3);
    CHECK(five.classify(Rational(3, 10)) == 3);
    CHECK(five.classify(Rational(11, 43)) == 4);
    CHECK_THROWS_AS(four.classify(Rational(0)), ArgumentError);
    CHECK_THROWS_AS(four.classify(Rational(11, 10)), ArgumentError);
  }

  TEST_CASE("4-type constants satisfy the blocking constraints") {
    const auto s = DwecScheme::four_type();
    REQUIRE(s.x.size() == 4);
    CHECK(s.x[0] == Rational(2));
    CHECK(s.x[1] == Rational(3, 8));
    CHECK(s.x[2] == Rational(3, 10));
    CHECK(s.x[3] == Rational(3));
    CHECK(Rational(4, 5) * s.x[1] + Rational(2, 3) * s.x[2] + Rational(1, 2) * s.x[3] >= 2);
    CHECK(Rational(2, 3) * s.x[2] + Rational(3, 5) * s.x[3] >= 2);
    CHECK(Rational(2, 3) * s.x[3] >= 2);
    CHECK(s.total() == Rational(227, 40));
  }

  TEST_CASE("first heavy arrival opens C_0") {
    DwecState st(DwecScheme::four_type(), 3);
    CHECK(st.opt_lower() == 0);
    const int c = st.arrive(1, 0, 1, Rational(1));
    CHECK(st.delta_bar() == 1);
    CHECK(st.classes()[0].size() == 2);
    CHECK(c == st.classes()[0][0]);
    st.audit();
  }

  TEST_CASE("two halves share a color") {
    DwecState st(DwecScheme::four_type(), 2);
    const int c1 = st.arrive(1, 0, 1, Rational(1, 2));
    const int c2 = st.arrive(2, 0, 1, Rational(1, 2));
    CHECK(c1 == c2);
    CHECK(st.color_load(0, c1) == Rational(1));
    st.audit();
  }

  TEST_CASE("departure keeps running maxima and colors") {
    DwecState st(DwecScheme::four_type(), 2);
    st.arrive(1, 0, 1, Rational(3, 5));
    const auto used = st.colors_used();
    st.depart(1);
    CHECK(st.live().empty());
    CHECK(st.w_bar() == Rational(3, 5));
    CHECK(st.delta_bar() == 1);
    CHECK(st.colors_used() == used);
    CHECK_THROWS_AS(st.depart(1), SimError);
    CHECK_THROWS_AS(st.arrive(2, 0, 0, Rational(1, 2)), ArgumentError);
    CHECK_THROWS_AS(st.arrive(2, 0, 5, Rational(1, 2)), ArgumentError);
  }

  TEST_CASE("opt lower bound examples") {
    DwecState st(DwecScheme::four_type(), 4);
    st.arrive(1, 0, 1, Rational(1, 2));
    st.arrive(2, 0, 2, Rational(1, 2));
    st.arrive(3, 0, 3, Rational(1, 2));
    CHECK(st.opt_lower() >= 2);
    DwecState heavy(DwecScheme::four_type(), 4);
    for (int i = 1; i <= 3; ++i) heavy.arrive(static_cast<std::uint64_t>(i), 0, i, Rational(3, 5));
    CHECK(heavy.delta_bar() == 3);
    CHECK(heavy.opt_lower() >= 3);
  }

  TEST_CASE("opt_exact examples") {
    CHECK(opt_exact({{0, 1, Rational(1, 3)}}) == 1);
    CHECK(opt_exact({{0, 1, Rational(3, 5)}, {0, 1, Rational(3, 5)}}) == 2);
    for (int k = 2; k <= 6; ++k) {
      std::vector<WeightedEdge> e(static_cast<std::size_t>(k), {0, 1, Rational(1, k)});
      CHECK(opt_exact(e) == 1);
    }
    CHECK(opt_exact({}) == 0);
    std::vector<WeightedEdge> big(13, {0, 1, Rational(1, 20)});
    CHECK_THROWS_AS(opt_exact(big), SizeLimitError);
  }

  TEST_CASE("opt_exact equals unpruned search on random small graphs") {
    std::mt19937_64 rng(4);
    const std::vector<Rational> w{Rational(1, 4), Rational(1, 3), Rational(41, 100), Rational(1, 2), Rational(3, 5), Rational(1)};
    for (int trial = 0; trial < 150; ++trial) {
      const int edges = 1 + static_cast<int>(rng() % 6);
      std::vector<WeightedEdge> e;
      for (int i = 0; i < edges; ++i) {
        const int u = static_cast<int>(rng() % 4);
        int v = static_cast<int>(rng() % 3);
        if (v >= u) ++v;
        e.push_back({u, v, w[rng() % w.size()]});
      }
      CHECK(opt_exact(e) == brute_opt(e, 4));
    }
  }

  TEST_CASE("running maxima never exceed the exact optimum") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      DwecState st(DwecScheme::four_type(), 4);
      std::vector<WeightedEdge> e;
      for (int i = 0; i < 8; ++i) {
        const int u = static_cast<int>(rng() % 4);
        int v = static_cast<int>(rng() % 3);
        if (v >= u) ++v;
        const Rational w(1 + static_cast<std::int64_t>(rng() % 10), 10);
        st.arrive(static_cast<std::uint64_t>(i), u, v, w);
        e.push_back({u, v, w});
        const int opt = opt_exact(e);
        CHECK(st.w_bar().ceil() <= opt);
        CHECK(st.delta_bar() <= opt);
        CHECK(Rational(st.colors_used()) <= Rational(227, 40) * Rational(opt) + Rational(9, 5));
      }
    }
  }

  TEST_CASE("class sizes track the running maxima") {
    std::mt19937_64 rng(10);
    DwecState st(DwecScheme::four_type(), 5);
    std::vector<std::uint64_t> live;
    for (std::uint64_t id = 1; id < 1500; ++id) {
      if (!live.empty() && rng() % 5 < 2) {
        const auto i = rng() % live.size();
        st.depart(live[i]);
        live[i] = live.back();
        live.pop_back();
      } else {
        const int u = static_cast<int>(rng() % 5);
        int v = static_cast<int>(rng() % 4);
        if (v >= u) ++v;
        st.arrive(id, u, v, Rational(1 + static_cast<std::int64_t>(rng() % 100), 100));
        live.push_back(id);
      }
      const auto& x = st.scheme().x;
      std::int64_t want = (x[0] * Rational(st.delta_bar())).ceil();
      for (std::size_t i = 1; i < x.size(); ++i) want += (x[i] * st.w_bar()).ceil();
      CHECK(st.colors_used() == want);
      CHECK(dwec_class_sizes_ok(st));
    }
    st.audit();
  }

  TEST_CASE("two-vertex base graph behaves as bin packing") {
    auto rng = trial_rng(3, 0);
    const auto s = dwec_trial(DwecScheme::four_type(), 2, 97, rng, 3000);
    CHECK(s.coloring_failures == 0);
    CHECK(s.audit_failures == 0);
    CHECK(s.class_size_failures == 0);
  }

  TEST_CASE("the 5-type scheme never fails either") {
    for (int v = 2; v <= 6; ++v) {
      auto rng = trial_rng(5, static_cast<std::uint64_t>(v));
      const auto s = dwec_trial(DwecScheme::five_type(), v, 43 * 7, rng, 1500);
      CHECK(s.coloring_failures == 0);
      CHECK(s.audit_failures == 0);
      CHECK(s.class_size_failures == 0);
    }
  }

  TEST_CASE("derived constants for the 4-type breakpoints") {
    const auto c = derive_constants({Rational(1, 2), Rational(2, 5), Rational(1, 3)});
    REQUIRE(c.beta.size() >= 2);
    CHECK(c.beta[1][1] == Rational(4, 5));
    CHECK(c.beta[1][2] == Rational(2, 3));
    CHECK(c.beta[1][3] == Rational(1, 2));
    CHECK(c.beta[2][2] == Rational(2, 3));
    CHECK(c.beta[2][3] == Rational(3, 5));
    CHECK(c.beta[3][3] == Rational(2, 3));
    CHECK(c.x == std::vector<Rational>{Rational(2), Rational(3, 8), Rational(3, 10), Rational(3)});
    CHECK(c.objective == Rational(227, 40));
  }

  TEST_CASE("two-type scheme reduces to two constraints") {
    const auto c = derive_constants({Rational(1, 2)});
    // x_0 >= 2 and x_1 / 2 >= 2 by hand.
    CHECK(c.x == std::vector<Rational>{Rational(2), Rational(4)});
    CHECK(c.objective == Rational(6));
  }

  TEST_CASE("5-type constants are feasible for their own LP") {
    const auto c = derive_constants({Rational(1, 2), Rational(2, 5), Rational(1, 3), Rational(11, 43)});
    REQUIRE(c.x.size() == 5);
    for (std::size_t i = 1; i < c.x.size(); ++i) {
      Rational lhs(0);
      for (std::size_t j = i; j < c.x.size(); ++j) lhs += c.beta[i][j] * c.x[j];
      CHECK(lhs >= 2);
    }
    CHECK(c.objective < Rational(227, 40));
    CHECK(DwecScheme::five_type().x == c.x);
  }

  TEST_CASE("covering LP solver on a hand instance") {
    // min x + y, x + 2y >= 4, 3x + y >= 6: optimum at (8/5, 6/5).
    const auto sol = minimize_covering_lp({{Rational(1), Rational(2)}, {Rational(3), Rational(1)}}, {Rational(4), Rational(6)},
                                          {Rational(1), Rational(1)});
    REQUIRE(sol.has_value());
    CHECK(sol->objective == Rational(14, 5));
    CHECK(sol->x == std::vector<Rational>{Rational(8, 5), Rational(6, 5)});
    CHECK_FALSE(minimize_covering_lp({{Rational(0)}}, {Rational(1)}, {Rational(1)}).has_value());
  }
}
