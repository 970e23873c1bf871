#include "nonblock/adversary.hpp"

#include <algorithm>

#include "nonblock/error.hpp"

namespace nonblock {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

const char* to_string(Adversary a) {
  switch (a) {
    case Adversary::Random: return "random";
    case Adversary::Greedy: return "greedy";
    case Adversary::Exhaustive: return "exhaustive";
  }
  return "unknown";
}

namespace {

template <class T>
T pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[rng() % v.size()];
}

struct MultilogCandidate {
  std::uint64_t input = 0;
  std::vector<std::uint64_t> outputs;
};

// Free outputs of one random window (Greedy keeps requests inside a window so
// every candidate is scored by a single blocking-plane count).
std::optional<MultilogCandidate> draw_request(const MultilogSim& sim, std::mt19937_64& rng, bool one_window) {
  const auto& cfg = sim.config();
  const Radix& r = sim.radix();
  const std::uint64_t N = r.count();
  std::vector<std::uint64_t> ins;
  for (std::uint64_t u = 0; u < N; ++u)
    if (!sim.input_busy(u)) ins.push_back(u);
  if (ins.empty()) return std::nullopt;
  std::vector<std::uint64_t> outs;
  if (one_window) {
    const std::uint64_t windows = r.pow[static_cast<std::size_t>(cfg.n - cfg.t)];
    const std::uint64_t size = r.pow[static_cast<std::size_t>(cfg.t)];
    const std::uint64_t start = rng() % windows;
    for (std::uint64_t k = 0; k < windows && outs.empty(); ++k) {
      const std::uint64_t w = (start + k) % windows;
      for (std::uint64_t v = w * size; v < (w + 1) * size; ++v)
        if (!sim.output_busy(v)) outs.push_back(v);
    }
  } else {
    for (std::uint64_t v = 0; v < N; ++v)
      if (!sim.output_busy(v)) outs.push_back(v);
  }
  if (outs.empty()) return std::nullopt;
  std::shuffle(outs.begin(), outs.end(), rng);
  const auto want = 1 + rng() % static_cast<std::uint64_t>(cfg.f);
  outs.resize(std::min<std::size_t>(outs.size(), want));
  std::sort(outs.begin(), outs.end());
  return MultilogCandidate{pick(ins, rng), std::move(outs)};
}

}  // namespace

TrialStats multilog_trial(const MultilogConfig& cfg, Adversary adv, std::mt19937_64& rng, int events) {
  if (adv == Adversary::Exhaustive) throw ArgumentError("exhaustive search is not available for multilog traffic");
  MultilogSim sim(cfg);
  TrialStats st;
  std::vector<std::uint64_t> live;
  std::vector<int> load(static_cast<std::size_t>(cfg.m) + 1, 0);
  std::uint64_t next_id = 1;
  const bool greedy = adv == Adversary::Greedy;
  PlaneChooser spread = [&](std::uint64_t, const std::vector<int>& avail) {
    int best = avail.front();
    for (int p : avail)
      if (load[static_cast<std::size_t>(p)] < load[static_cast<std::size_t>(best)]) best = p;
    return best;
  };
  for (int e = 0; e < events; ++e) {
    ++st.events;
    // Greedy departs rarely to keep the network loaded.
    const bool depart = !live.empty() && rng() % (greedy ? 5 : 3) == 0;
    if (depart) {
      const std::size_t i = rng() % live.size();
      for (const auto& w : sim.placement(live[i])) --load[static_cast<std::size_t>(w.plane)];
      sim.release(live[i]);
      live[i] = live.back();
      live.pop_back();
      continue;
    }
    std::optional<MultilogCandidate> req;
    int worst = -1;
    for (int c = 0; c < (greedy ? 8 : 1); ++c) {
      auto cand = draw_request(sim, rng, greedy);
      if (!cand) break;
      if (!greedy) {
        req = std::move(cand);
        break;
      }
      const int planes = static_cast<int>(sim.blocking_planes(cand->input, cand->outputs).size());
      if (planes > worst) {
        worst = planes;
        req = std::move(cand);
      }
    }
    if (!req) continue;
    ++st.arrivals;
    for (std::size_t lo = 0; lo < req->outputs.size();) {
      const auto w = sim.radix().window(req->outputs[lo], cfg.t);
      std::size_t hi = lo;
      while (hi < req->outputs.size() && sim.radix().window(req->outputs[hi], cfg.t) == w) ++hi;
      const std::span<const std::uint64_t> part(req->outputs.data() + lo, hi - lo);
      st.max_unavailable = std::max(st.max_unavailable, static_cast<int>(sim.blocking_planes(req->input, part).size()));
      lo = hi;
    }
    const std::uint64_t id = next_id++;
    const auto res = sim.admit(id, req->input, req->outputs, greedy ? spread : PlaneChooser{});
    if (res.blocked()) {
      ++st.blocked;
      sim.release(id);
      continue;
    }
    for (const auto& w : res.windows) ++load[static_cast<std::size_t>(w.plane)];
    live.push_back(id);
  }
  return st;
}

TrialStats clos_snb_trial(const ClosConfig& cfg, Adversary adv, std::mt19937_64& rng, int events) {
  if (adv == Adversary::Exhaustive) throw ArgumentError("exhaustive search is not available for Clos SNB traffic");
  const bool greedy = adv == Adversary::Greedy;
  ClosSpaceSim sim(cfg);
  TrialStats st;
  std::vector<int> mid_load(static_cast<std::size_t>(cfg.m) + 1, 0);
  CrossbarChooser chooser = [&](const std::vector<int>& avail) {
    if (!greedy) return pick(avail, rng);
    int best = avail.front();
    for (int x : avail)
      if (mid_load[static_cast<std::size_t>(x)] < mid_load[static_cast<std::size_t>(best)]) best = x;
    return best;
  };
  std::uint64_t next_id = 1;
  for (int e = 0; e < events; ++e) {
    ++st.events;
    auto ids = sim.active_ids();
    auto ins = sim.free_inputs();
    auto outs = sim.free_outputs();
    const bool depart = !ids.empty() && (ins.empty() || outs.empty() || rng() % (greedy ? 5 : 3) == 0);
    if (depart) {
      const auto id = pick(ids, rng);
      --mid_load[static_cast<std::size_t>(sim.middle_of(id))];
      sim.release(id);
      continue;
    }
    if (ins.empty() || outs.empty()) continue;
    Terminal in = pick(ins, rng), out = pick(outs, rng);
    if (greedy) {
      int worst = -1;
      for (int c = 0; c < 8; ++c) {
        Terminal i2 = pick(ins, rng), o2 = pick(outs, rng);
        const int u = sim.unavailable_count(i2.crossbar, o2.crossbar);
        if (u > worst) {
          worst = u;
          in = i2;
          out = o2;
        }
      }
    }
    ++st.arrivals;
    st.max_unavailable = std::max(st.max_unavailable, sim.unavailable_count(in.crossbar, out.crossbar));
    const int mid = sim.snb_admit(next_id, in, out, chooser);
    if (mid == 0) {
      ++st.blocked;
      continue;
    }
    ++mid_load[static_cast<std::size_t>(mid)];
    ++next_id;
  }
  return st;
}

bool clos_greedy_blocks(int n, int m, int r) {
  if (n < 2 || r < 2) throw ArgumentError("construction needs n >= 2 and r >= 2");
  if (m > 2 * n - 2) return false;
  ClosSpaceSim sim(ClosConfig::symmetric(n, m, r));
  std::uint64_t id = 1;
  int next_mid = 1;
  auto force = [&](const std::vector<int>& avail) {
    for (int x : avail)
      if (x >= next_mid) return x;
    return avail.front();
  };
  for (int k = 1; k <= n - 1 && next_mid <= m; ++k, ++next_mid)
    if (sim.snb_admit(id++, {1, k}, {2, k}, force) == 0) return false;
  for (int k = 1; k <= n - 1 && next_mid <= m; ++k, ++next_mid)
    if (sim.snb_admit(id++, {2, k}, {1, k}, force) == 0) return false;
  return sim.snb_admit(id, {1, n}, {1, n}) == 0;
}

BenesTrialStats benes_trial(int n, int m, std::mt19937_64& rng, int events) {
  ClosSpaceSim sim(ClosConfig::symmetric(n, m, 2));
  BenesTrialStats out;
  std::uint64_t next_id = 1;
  for (int e = 0; e < events; ++e) {
    ++out.stats.events;
    auto ids = sim.active_ids();
    auto ins = sim.free_inputs();
    auto outs = sim.free_outputs();
    const bool depart = !ids.empty() && (ins.empty() || outs.empty() || rng() % 3 == 0);
    if (depart) {
      sim.release(pick(ids, rng));
    } else if (!ins.empty() && !outs.empty()) {
      ++out.stats.arrivals;
      const Terminal in = pick(ins, rng), o = pick(outs, rng);
      out.stats.max_unavailable = std::max(out.stats.max_unavailable, sim.unavailable_count(in.crossbar, o.crossbar));
      if (sim.benes_admit(next_id, in, o) == 0)
        ++out.stats.blocked;
      else
        ++next_id;
    }
    const auto u = sim.benes_unions();
    if (u[0] > n || u[1] > n) ++out.invariant_violations;
  }
  return out;
}

bool dwec_class_sizes_ok(const DwecState& state) {
  const auto& s = state.scheme();
  for (int i = 0; i < s.types(); ++i) {
    const Rational scale = i == 0 ? Rational(state.delta_bar()) : state.w_bar();
    const std::int64_t want = (s.x[static_cast<std::size_t>(i)] * scale).ceil();
    if (static_cast<std::int64_t>(state.classes()[static_cast<std::size_t>(i)].size()) != want) return false;
  }
  return true;
}

DwecTrialStats dwec_trial(const DwecScheme& scheme, int vertices, int den, std::mt19937_64& rng, int events) {
  if (vertices < 2) throw ArgumentError("need at least two vertices");
  if (den < 1) throw ArgumentError("weight denominator must be >= 1");
  DwecState state(scheme, vertices);
  DwecTrialStats out;
  std::vector<std::uint64_t> live;
  std::uint64_t next_id = 1;
  for (int e = 0; e < events; ++e) {
    ++out.events;
    if (!live.empty() && rng() % 5 < 2) {
      const std::size_t i = rng() % live.size();
      state.depart(live[i]);
      live[i] = live.back();
      live.pop_back();
    } else {
      const int u = static_cast<int>(rng() % static_cast<std::uint64_t>(vertices));
      int v = static_cast<int>(rng() % static_cast<std::uint64_t>(vertices - 1));
      if (v >= u) ++v;
      const Rational w(1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(den)), den);
      try {
        state.arrive(next_id, u, v, w);
        live.push_back(next_id);
      } catch (const ColoringFailure&) {
        ++out.coloring_failures;
      }
      ++next_id;
    }
    try {
      state.audit();
    } catch (const std::logic_error&) {
      ++out.audit_failures;
    }
    if (!dwec_class_sizes_ok(state)) ++out.class_size_failures;
    out.max_colors = std::max(out.max_colors, state.colors_used());
  }
  return out;
}

}  // namespace nonblock
