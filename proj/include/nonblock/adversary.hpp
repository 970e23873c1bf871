#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "nonblock/clos.hpp"
#include "nonblock/dwec.hpp"
#include "nonblock/multilog.hpp"

namespace nonblock {

// Seeded generator for trial `trial` of a run with master seed `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

enum class Adversary { Random, Greedy, Exhaustive };
const char* to_string(Adversary a);

struct TrialStats {
  std::int64_t events = 0;
  std::int64_t arrivals = 0;
  std::int64_t blocked = 0;
  int max_unavailable = 0;  // most planes / middle crossbars unusable for an arrival
};

// Multilog traffic. Random draws free inputs and outputs uniformly with
// fanout up to f. Greedy samples several candidate requests and keeps the
// one with the most blocking planes, placing subrequests on the least
// loaded available plane to spread routes. A blocked request is released.
TrialStats multilog_trial(const MultilogConfig& cfg, Adversary adv, std::mt19937_64& rng, int events);

// Random arrivals and departures that never touch input a or outputs B;
// calls visit(sim) after every event.
template <class Visit>
void multilog_background(MultilogSim& sim, std::uint64_t a, const std::vector<std::uint64_t>& B, std::mt19937_64& rng,
                         int events, Visit&& visit);

// Unicast Clos traffic under snb_admit with a random middle choice (Random)
// or a spreading choice with worst-pair selection (Greedy).
TrialStats clos_snb_trial(const ClosConfig& cfg, Adversary adv, std::mt19937_64& rng, int events);

// The fixed construction that blocks C(n, 2n-2, r), r >= 2: n-1 requests out
// of input crossbar 1 on middles 1..n-1, n-1 requests into output crossbar 1
// on middles n..2n-2, then 1 -> 1. Returns true when the final arrival blocks.
bool clos_greedy_blocks(int n, int m, int r);

struct BenesTrialStats {
  TrialStats stats;
  std::int64_t invariant_violations = 0;
};
// Random traffic on C(n, m, 2) under the reuse rule; checks both union
// invariants after every event.
BenesTrialStats benes_trial(int n, int m, std::mt19937_64& rng, int events);

struct DwecTrialStats {
  std::int64_t events = 0;
  std::int64_t max_colors = 0;
  std::int64_t coloring_failures = 0;
  std::int64_t audit_failures = 0;
  std::int64_t class_size_failures = 0;
};
// Random weighted arrivals/departures on `vertices` vertices with weights
// p/den, 1 <= p <= den. Audits weights and class sizes after every event.
DwecTrialStats dwec_trial(const DwecScheme& scheme, int vertices, int den, std::mt19937_64& rng, int events);

// True when every class has exactly its target size for the current W and
// Delta running maxima.
bool dwec_class_sizes_ok(const DwecState& state);

// ---------------------------------------------------------------------------

template <class Visit>
void multilog_background(MultilogSim& sim, std::uint64_t a, const std::vector<std::uint64_t>& B, std::mt19937_64& rng,
                         int events, Visit&& visit) {
  const auto& cfg = sim.config();
  const std::uint64_t N = sim.radix().count();
  std::vector<char> reserved_out(N, 0);
  for (auto b : B) reserved_out[b] = 1;
  std::uint64_t next_id = 1;
  std::vector<std::uint64_t> live;
  std::vector<std::uint64_t> outs;
  for (int e = 0; e < events; ++e) {
    const bool depart = !live.empty() && (rng() % 3 == 0);
    if (depart) {
      std::size_t pick = rng() % live.size();
      sim.release(live[pick]);
      live[pick] = live.back();
      live.pop_back();
    } else {
      std::vector<std::uint64_t> ins, free_outs;
      for (std::uint64_t u = 0; u < N; ++u)
        if (u != a && !sim.input_busy(u)) ins.push_back(u);
      for (std::uint64_t v = 0; v < N; ++v)
        if (!reserved_out[v] && !sim.output_busy(v)) free_outs.push_back(v);
      if (ins.empty() || free_outs.empty()) {
        visit(sim);
        continue;
      }
      const std::uint64_t u = ins[rng() % ins.size()];
      const std::int64_t want = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(cfg.f));
      std::shuffle(free_outs.begin(), free_outs.end(), rng);
      outs.assign(free_outs.begin(),
                  free_outs.begin() + static_cast<std::ptrdiff_t>(std::min<std::int64_t>(want, free_outs.size())));
      const std::uint64_t id = next_id++;
      auto res = sim.admit(id, u, outs);
      if (res.blocked())
        sim.release(id);
      else
        live.push_back(id);
    }
    visit(sim);
  }
}

}  // namespace nonblock
