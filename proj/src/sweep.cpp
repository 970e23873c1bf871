#include "nonblock/sweep.hpp"

#include <sstream>

#include "nonblock/bounds.hpp"
#include "nonblock/clos.hpp"
#include "nonblock/error.hpp"

namespace nonblock {

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

const char* to_string(Topology t) {
  switch (t) {
    case Topology::Multilog: return "multilog";
    case Topology::Clos: return "clos";
    case Topology::Benes: return "benes";
  }
  return "unknown";
}

void SweepSpec::validate() const {
  auto nonempty = [](bool empty, const char* what) {
    if (empty) throw ArgumentError(std::string("empty grid list: ") + what);
  };
  nonempty(n.empty(), "n");
  nonempty(m_offset.empty(), "m-offset");
  if (topology == Topology::Multilog) {
    nonempty(d.empty(), "d");
    nonempty(t.empty(), "t");
    nonempty(f.empty(), "f");
  }
  if (topology == Topology::Clos) nonempty(r.empty(), "r");
  if (trials < 1) throw ArgumentError("trials must be >= 1");
  if (events < 0) throw ArgumentError("events must be >= 0");
  if (adversary == Adversary::Exhaustive) {
    if (topology != Topology::Benes) throw ArgumentError("exhaustive adversary is only defined for benes");
    if (depth < 1 || depth > depth_cap)
      throw ArgumentError("depth " + std::to_string(depth) + " outside [1, " + std::to_string(depth_cap) + "]");
  }
}

namespace {

std::vector<SweepRow> grid(const SweepSpec& s) {
  std::vector<SweepRow> rows;
  for (int n : s.n)
    for (int off : s.m_offset) {
      SweepRow row;
      row.topology = s.topology;
      row.n = n;
      row.m_offset = off;
      row.trials = s.trials;
      switch (s.topology) {
        case Topology::Multilog:
          for (int d : s.d)
            for (int t : s.t)
              for (auto f : s.f) {
                if (t < 0 || t > n) throw ArgumentError("t=" + std::to_string(t) + " outside [0, n=" + std::to_string(n) + "]");
                if (f < 1 || f > ipow(d, n)) throw ArgumentError("f=" + std::to_string(f) + " outside [1, d^n]");
                SweepRow r = row;
                r.d = d;
                r.t = t;
                r.f = f;
                r.m = multilog_m_sufficient(s.mode, d, n, t, f) + off;
                rows.push_back(r);
              }
          break;
        case Topology::Clos:
          for (int rr : s.r) {
            SweepRow r = row;
            r.r = rr;
            r.f = 1;
            r.m = clos_snb(n) + off;
            rows.push_back(r);
          }
          break;
        case Topology::Benes: {
          SweepRow r = row;
          r.r = 2;
          r.f = 1;
          r.m = clos_wsnb_r2(n) + off;
          rows.push_back(r);
          break;
        }
      }
    }
  for (const auto& r : rows)
    if (r.m < 1) throw ArgumentError("m-offset leaves no planes/middles at n=" + std::to_string(r.n));
  return rows;
}

}  // namespace

bool Report::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) {
    return r.invariant_violations == 0 && (r.m_offset < 0 || r.blocked == 0);
  });
}

std::string Report::csv() const {
  std::ostringstream os;
  os << "# seed=" << spec.seed << " adversary=" << to_string(spec.adversary) << " mode=" << to_string(spec.mode)
     << " trials=" << spec.trials << " events=" << spec.events << "\n";
  os << "topology,d,n,t,f,r,m_offset,m,trials,arrivals,blocked,max_unavailable,invariant_violations\n";
  for (const auto& r : rows)
    os << to_string(r.topology) << ',' << r.d << ',' << r.n << ',' << r.t << ',' << r.f << ',' << r.r << ','
       << r.m_offset << ',' << r.m << ',' << r.trials << ',' << r.arrivals << ',' << r.blocked << ','
       << r.max_unavailable << ',' << r.invariant_violations << '\n';
  return os.str();
}

Report run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  Report rep;
  rep.spec = spec;
  rep.rows = grid(spec);
  const std::size_t per = static_cast<std::size_t>(spec.trials);
  struct Partial {
    TrialStats st;
    std::int64_t violations = 0;
  };
  auto task = [&](std::size_t idx) {
    const SweepRow& row = rep.rows[idx / per];
    const std::uint64_t trial = idx;
    auto rng = trial_rng(spec.seed, trial);
    Partial p;
    switch (spec.topology) {
      case Topology::Multilog: {
        MultilogConfig cfg;
        cfg.d = row.d;
        cfg.n = row.n;
        cfg.m = static_cast<int>(row.m);
        cfg.t = row.t;
        cfg.f = row.f;
        cfg.mode = spec.mode;
        p.st = multilog_trial(cfg, spec.adversary, rng, spec.events);
        break;
      }
      case Topology::Clos:
        p.st = clos_snb_trial(ClosConfig::symmetric(row.n, static_cast<int>(row.m), row.r), spec.adversary, rng,
                              spec.events);
        break;
      case Topology::Benes:
        if (spec.adversary == Adversary::Exhaustive) {
          // One search per grid point; trials beyond the first are no-ops.
          if (idx % per == 0) {
            auto path = benes_blocking_search(row.n, static_cast<int>(row.m), spec.depth);
            p.st.events = path ? static_cast<std::int64_t>(path->size()) : 0;
            p.st.arrivals = p.st.events;
            p.st.blocked = path && replay_benes(row.n, static_cast<int>(row.m), *path) ? 1 : 0;
          }
        } else {
          auto b = benes_trial(row.n, static_cast<int>(row.m), rng, spec.events);
          p.st = b.stats;
          p.violations = b.invariant_violations;
        }
        break;
    }
    return p;
  };
  auto parts = parallel_map<Partial>(rep.rows.size() * per, task, threads);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto& row = rep.rows[i / per];
    row.arrivals += parts[i].st.arrivals;
    row.blocked += parts[i].st.blocked;
    row.max_unavailable = std::max(row.max_unavailable, parts[i].st.max_unavailable);
    row.invariant_violations += parts[i].violations;
  }
  return rep;
}

}  // namespace nonblock
