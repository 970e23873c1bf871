#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "nonblock/adversary.hpp"
#include "nonblock/bounds.hpp"
#include "nonblock/clos.hpp"
#include "nonblock/dwec.hpp"
#include "nonblock/error.hpp"
#include "nonblock/lpcert.hpp"
#include "nonblock/multilog.hpp"
#include "nonblock/sweep.hpp"
#include "nonblock/trace.hpp"

using namespace nonblock;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

const std::map<std::string, Mode> kModes{{"link", Mode::LinkBlocking}, {"crosstalk", Mode::CrosstalkFree}};

std::vector<Mode> modes_of(const std::string& s) {
  if (s == "both") return {Mode::LinkBlocking, Mode::CrosstalkFree};
  return {kModes.at(s)};
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  return in;
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  std::string kind = "multilog";
  std::vector<int> d{2};
  std::vector<int> n{3};
  std::vector<int> t{0};
  std::vector<std::int64_t> f{1};
  std::string mode = "link";
  std::string form = "derived";
  std::string scheme = "four";
};

void bound_row(std::ostream& os, int d, int n, int t, std::int64_t f, const std::string& branch, const std::string& value,
               std::int64_t m) {
  os << d << ',' << n << ',' << t << ',' << f << ',' << branch << ',' << value << ',' << m << '\n';
}

int cmd_bound(const BoundArgs& a) {
  std::ostringstream os;
  os << "d,n,t,f,branch,value,m_sufficient\n";
  const Mode mode = kModes.at(a.mode);
  for (int n : a.n) {
    if (a.kind == "clos-snb") {
      const auto m = clos_snb(n);
      bound_row(os, 0, n, 0, 1, "2n-1", std::to_string(m), m);
      continue;
    }
    if (a.kind == "benes") {
      const auto m = clos_wsnb_r2(n);
      bound_row(os, 0, n, 0, 1, "floor(3n/2)", std::to_string(m), m);
      continue;
    }
    if (a.kind == "clos-multirate") {
      const auto s = a.scheme == "five" ? MultirateScheme::FiveTypePaper : MultirateScheme::FourType;
      const auto m = clos_multirate(n, s);
      bound_row(os, 0, n, 0, 1, a.scheme + "-type", std::to_string(m), m);
      continue;
    }
    for (int d : a.d)
      for (int t : a.t)
        for (auto f : a.f) {
          if (a.kind == "multilog") {
            if (t == n) {
              const auto m = multilog_m_sufficient(mode, d, n, t, f);
              bound_row(os, d, n, t, f, mode == Mode::LinkBlocking ? "snb-t=n" : "cf-snb-t=n", std::to_string(m - 1), m);
            } else {
              const auto r = mode == Mode::LinkBlocking
                                 ? C_bound(d, n, t, f)
                                 : G_bound(d, n, t, f, a.form == "printed" ? GForm::Printed : GForm::Derived);
              bound_row(os, d, n, t, f, r.branch, r.value.str(), r.m_sufficient);
            }
          } else if (a.kind == "enumerate") {
            const auto e = sufficient_m_enumerated(d, n, t, f, mode);
            bound_row(os, d, n, t, f,
                      "k=" + std::to_string(e.worst_k) + " p=" + std::to_string(e.best_p) + " q=" + std::to_string(e.best_q),
                      e.max_min.str(), e.m_sufficient);
          } else if (a.kind == "hwang") {
            const auto m = hwang_unicast(d, n);
            bound_row(os, d, n, n, 1, "hwang", std::to_string(m), m);
          } else if (a.kind == "wang07") {
            const auto v = wang07(d, n, f);
            bound_row(os, d, n, 0, f, "wang07", v.str(), v.ceil());
          } else if (a.kind == "danilewicz") {
            const auto v = danilewicz(d, n, t);
            bound_row(os, d, n, t, ipow(d, n), "danilewicz", v.str(), v.ceil());
          } else if (a.kind == "cf-window") {
            const auto v = cf_wsnb_window(d, n, t);
            bound_row(os, d, n, t, ipow(d, n), "cf-window", v.str(), v.ceil());
          } else {
            throw ArgumentError("unknown bound kind '" + a.kind + "'");
          }
        }
  }
  std::cout << os.str();
  return kOk;
}

// ------------------------------------------------------------- simulate

struct SimArgs {
  std::string topology = "multilog";
  std::vector<int> d{2};
  std::vector<int> n{3};
  std::vector<int> t{0};
  std::vector<std::int64_t> f{1};
  std::vector<int> r{2};
  std::vector<int> m_offset{0};
  int trials = 100;
  int events = 200;
  std::uint64_t seed = 1;
  std::string adversary = "random";
  int depth = 12;
  std::string mode = "link";
  unsigned threads = 0;
  std::string trace;
  int m = 0;
  std::string scheme = "";
};

int cmd_simulate(const SimArgs& a) {
  const Mode mode = kModes.at(a.mode);
  if (!a.trace.empty()) {
    if (a.m < 1) throw ArgumentError("--trace needs --m");
    auto in = open_input(a.trace);
    std::int64_t blocked = 0;
    if (a.topology == "multilog") {
      MultilogConfig cfg;
      cfg.d = a.d.front();
      cfg.n = a.n.front();
      cfg.t = a.t.front();
      cfg.f = a.f.front();
      cfg.m = a.m;
      cfg.mode = mode;
      MultilogSim sim(cfg);
      blocked = replay_multilog(sim, parse_multilog_trace(in, cfg.d, cfg.n), std::cout);
    } else if (a.topology == "clos" || a.topology == "benes") {
      const auto events = parse_clos_trace(in);
      const auto cfg = ClosConfig::symmetric(a.n.front(), a.m, a.topology == "benes" ? 2 : a.r.front());
      if (!a.scheme.empty()) {
        ClosMultirateSim sim(cfg, a.scheme == "five" ? DwecScheme::five_type() : DwecScheme::four_type());
        blocked = replay_clos_multirate(sim, events, std::cout);
      } else {
        ClosSpaceSim sim(cfg);
        blocked = replay_clos(sim, a.topology == "benes", events, std::cout);
      }
    } else {
      throw ArgumentError("unknown topology '" + a.topology + "'");
    }
    return blocked == 0 ? kOk : kFailed;
  }

  SweepSpec spec;
  static const std::map<std::string, Topology> topo{
      {"multilog", Topology::Multilog}, {"clos", Topology::Clos}, {"benes", Topology::Benes}};
  static const std::map<std::string, Adversary> adv{
      {"random", Adversary::Random}, {"greedy", Adversary::Greedy}, {"exhaustive", Adversary::Exhaustive}};
  if (!topo.count(a.topology)) throw ArgumentError("unknown topology '" + a.topology + "'");
  spec.topology = topo.at(a.topology);
  spec.d = a.d;
  spec.n = a.n;
  spec.t = a.t;
  spec.f = a.f;
  spec.r = a.r;
  spec.m_offset = a.m_offset;
  spec.trials = a.trials;
  spec.events = a.events;
  spec.seed = a.seed;
  spec.adversary = adv.at(a.adversary);
  spec.depth = a.depth;
  spec.mode = mode;
  const auto rep = run_sweep(spec, a.threads == 0 ? default_threads() : a.threads);
  std::cout << rep.csv();
  return rep.ok() ? kOk : kFailed;
}

// ----------------------------------------------------------------- dwec

struct DwecArgs {
  std::string scheme = "four";
  std::string derive;
  std::string trace;
  int vertices = 4;
  int events = 1000;
  int den = 100;
  std::uint64_t seed = 1;
};

std::vector<Rational> parse_fractions(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(Rational::parse(tok));
  if (out.empty()) throw ArgumentError("no breakpoints given");
  return out;
}

int cmd_dwec(const DwecArgs& a) {
  if (!a.derive.empty()) {
    const auto c = derive_constants(parse_fractions(a.derive));
    std::cout << "type,x\n";
    for (std::size_t i = 0; i < c.x.size(); ++i) std::cout << i << ',' << c.x[i].str() << '\n';
    std::cout << "sum," << c.objective.str() << " (" << c.objective.to_double() << ")\n";
    return kOk;
  }
  const DwecScheme scheme = a.scheme == "five" ? DwecScheme::five_type() : DwecScheme::four_type();
  if (!a.trace.empty()) {
    auto in = open_input(a.trace);
    const auto events = parse_dwec_trace(in);
    int vertices = a.vertices;
    for (const auto& e : events)
      if (e.arrive) vertices = std::max({vertices, e.u + 1, e.v + 1});
    DwecState state(scheme, vertices);
    replay_dwec(state, events, std::cout);
    return kOk;
  }
  auto rng = trial_rng(a.seed, 0);
  const auto st = dwec_trial(scheme, a.vertices, a.den, rng, a.events);
  std::cout << "# seed=" << a.seed << "\nevents,max_colors,coloring_failures,audit_failures,class_size_failures\n"
            << st.events << ',' << st.max_colors << ',' << st.coloring_failures << ',' << st.audit_failures << ','
            << st.class_size_failures << '\n';
  return st.coloring_failures + st.audit_failures + st.class_size_failures == 0 ? kOk : kFailed;
}

// -------------------------------------------------------------- certify

struct CertArgs {
  std::vector<int> d{2, 3};
  std::vector<int> n{3, 4};
  std::vector<int> t;
  std::vector<std::int64_t> f;
  std::string mode = "both";
  std::string export_dir;
  bool fuzz = false;
  std::uint64_t seed = 1;
};

int cmd_certify(const CertArgs& a) {
  std::cout << "d,n,t,f,k,p,q,mode,feasible,objective,cost_formula,match\n";
  bool ok = true;
  std::mt19937_64 rng(a.seed);
  if (!a.export_dir.empty()) std::filesystem::create_directories(a.export_dir);
  for (int d : a.d)
    for (int n : a.n) {
      std::vector<int> ts = a.t;
      if (ts.empty())
        for (int t = 0; t <= n; ++t) ts.push_back(t);
      std::vector<std::int64_t> fs = a.f;
      if (fs.empty()) fs = {1, 2, 4, ipow(d, n)};
      for (int t : ts)
        for (auto f : fs)
          for (Mode mode : modes_of(a.mode)) {
            if (t < 0 || t > n) throw ArgumentError("t outside [0, n]");
            if (f < 1 || f > ipow(d, n)) continue;
            for (std::int64_t k = 1; k <= std::min(f, ipow(d, t)); ++k) {
              const auto inst = canonical_instance(d, n, t, f, k, mode);
              if (!a.export_dir.empty()) {
                std::ofstream out(std::filesystem::path(a.export_dir) /
                                  ("d" + std::to_string(d) + "_n" + std::to_string(n) + "_t" + std::to_string(t) + "_f" +
                                   std::to_string(f) + "_k" + std::to_string(k) + "_" + to_string(mode) + ".lp"));
                out << export_lp(inst);
              }
              auto emit = [&](DualSolution y, const std::string& p, const std::string& q, const Rational& formula,
                              bool exact) {
                if (a.fuzz) {
                  // Drop one variable that some constraint relies on.
                  std::vector<Rational*> ones;
                  for (auto* vec : {&y.alpha, &y.beta, &y.gamma, &y.delta, &y.eps})
                    for (auto& v : *vec)
                      if (v > 0) ones.push_back(&v);
                  if (!ones.empty()) *ones[rng() % ones.size()] = 0;
                }
                const auto viol = dual_violations(inst, y, 1);
                const Rational obj = exact ? union_bound_objective(inst, y) : dual_objective(inst, y);
                const bool match = exact ? obj == formula : obj <= formula;
                std::cout << d << ',' << n << ',' << t << ',' << f << ',' << k << ',' << p << ',' << q << ','
                          << to_string(mode) << ',' << (viol.empty() ? "true" : "false") << ',' << obj.str() << ','
                          << formula.str() << ',' << (match ? "true" : "false");
                if (!viol.empty()) std::cout << ",\"" << viol.front().detail << '"';
                std::cout << '\n';
                if (!a.fuzz && (!viol.empty() || !match)) ok = false;
              };
              if (t == n) {
                if (n < 2) continue;
                const std::int64_t m = multilog_m_sufficient(mode, d, n, t, f);
                emit(dual_special_t_eq_n(inst), "", "", Rational(m - 1), false);
                continue;
              }
              for (int p = 0; p <= max_p(mode, n, t); ++p)
                for (int q = n - t; q <= n; ++q)
                  emit(dual_family(inst, p, q), std::to_string(p), std::to_string(q), cost(mode, d, n, t, f, k, p, q),
                       true);
            }
          }
    }
  return ok ? kOk : kFailed;
}

// ------------------------------------------------------------ export-lp

struct ExportArgs {
  int d = 2;
  int n = 3;
  int t = 1;
  std::int64_t f = 1;
  std::int64_t k = 1;
  std::string mode = "link";
  std::string input;
  std::vector<std::string> outputs;
  std::string out;
};

int cmd_export(const ExportArgs& a) {
  const Mode mode = kModes.at(a.mode);
  LpInstance inst;
  if (!a.input.empty()) {
    std::vector<DaryString> B;
    for (const auto& s : a.outputs) B.push_back(DaryString::parse(a.d, s));
    inst = build_instance(a.d, a.n, a.t, a.f, DaryString::parse(a.d, a.input), B, mode);
  } else {
    inst = canonical_instance(a.d, a.n, a.t, a.f, a.k, mode);
  }
  const auto text = export_lp(inst);
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
  } else {
    std::ofstream out(a.out);
    if (!out) throw ArgumentError("cannot write " + a.out);
    out << text;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonblocking bounds, simulators and LP certificates for Clos and multi-log networks"};
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags win");
  app.require_subcommand(1);
  auto modes = CLI::IsMember({"link", "crosstalk"});

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Evaluate a sufficient middle-stage count");
  bound->add_option("kind", ba.kind, "multilog | enumerate | clos-snb | benes | clos-multirate | hwang | wang07 | danilewicz | cf-window")
      ->check(CLI::IsMember({"multilog", "enumerate", "clos-snb", "benes", "clos-multirate", "hwang", "wang07",
                             "danilewicz", "cf-window"}));
  bound->add_option("--d", ba.d, "Switch radix (comma list)")->delimiter(',');
  bound->add_option("--n", ba.n, "Stages / Clos port count (comma list)")->delimiter(',');
  bound->add_option("--t", ba.t, "Window exponent (comma list)")->delimiter(',');
  bound->add_option("--f", ba.f, "Fanout (comma list)")->delimiter(',');
  bound->add_option("--mode", ba.mode, "link | crosstalk")->check(modes);
  bound->add_option("--form", ba.form, "Crosstalk-free table transcription")->check(CLI::IsMember({"derived", "printed"}));
  bound->add_option("--scheme", ba.scheme, "Multirate scheme")->check(CLI::IsMember({"four", "five"}));

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "Adversarial sweeps or trace replay");
  sim->add_option("--topology", sa.topology)->check(CLI::IsMember({"multilog", "clos", "benes"}));
  sim->add_option("--d", sa.d)->delimiter(',');
  sim->add_option("--n", sa.n)->delimiter(',');
  sim->add_option("--t", sa.t)->delimiter(',');
  sim->add_option("--f", sa.f)->delimiter(',');
  sim->add_option("--r", sa.r, "Clos crossbars per side")->delimiter(',');
  sim->add_option("--m-offset", sa.m_offset, "m = bound + offset (comma list)")->delimiter(',');
  sim->add_option("--trials", sa.trials);
  sim->add_option("--events", sa.events, "Events per trial");
  sim->add_option("--seed", sa.seed);
  sim->add_option("--adversary", sa.adversary)->check(CLI::IsMember({"random", "greedy", "exhaustive"}));
  sim->add_option("--depth", sa.depth, "Exhaustive search depth (benes, <= 20)");
  sim->add_option("--mode", sa.mode)->check(modes);
  sim->add_option("--threads", sa.threads, "Worker threads (0 = hardware)");
  sim->add_option("--trace", sa.trace, "Replay a trace file instead of sweeping");
  sim->add_option("--m", sa.m, "Plane / middle crossbar count for --trace");
  sim->add_option("--multirate", sa.scheme, "Replay a Clos trace as multirate with this DWEC scheme")
      ->check(CLI::IsMember({"four", "five"}));

  DwecArgs da;
  auto* dwec = app.add_subcommand("dwec", "Dynamic weighted edge coloring");
  dwec->add_option("--scheme", da.scheme)->check(CLI::IsMember({"four", "five"}));
  dwec->add_option("--derive-constants", da.derive, "Breakpoints, e.g. 1/2,2/5,1/3");
  dwec->add_option("--trace", da.trace);
  dwec->add_option("--vertices", da.vertices);
  dwec->add_option("--events", da.events);
  dwec->add_option("--den", da.den, "Random weights are p/den");
  dwec->add_option("--seed", da.seed);

  CertArgs ca;
  auto* cert = app.add_subcommand("certify", "Audit the dual-feasible certificate family");
  cert->add_option("--d", ca.d)->delimiter(',');
  cert->add_option("--n", ca.n)->delimiter(',');
  cert->add_option("--t", ca.t, "Default: 0..n")->delimiter(',');
  cert->add_option("--f", ca.f, "Default: 1,2,4,d^n")->delimiter(',');
  cert->add_option("--mode", ca.mode)->check(CLI::IsMember({"link", "crosstalk", "both"}));
  cert->add_option("--export-lp", ca.export_dir, "Directory for one LP file per instance");
  cert->add_flag("--fuzz", ca.fuzz, "Corrupt each dual and report the violation found");
  cert->add_option("--seed", ca.seed);

  ExportArgs ea;
  auto* exp = app.add_subcommand("export-lp", "Write the primal LP of one request");
  exp->add_option("--d", ea.d);
  exp->add_option("--n", ea.n);
  exp->add_option("--t", ea.t);
  exp->add_option("--f", ea.f);
  exp->add_option("--k", ea.k, "Canonical request size when --input is not given");
  exp->add_option("--mode", ea.mode)->check(modes);
  exp->add_option("--input", ea.input, "Input address (d-ary digits)");
  exp->add_option("--outputs", ea.outputs, "Output addresses")->delimiter(',');
  exp->add_option("--out", ea.out, "File (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*bound) return cmd_bound(ba);
    if (*sim) return cmd_simulate(sa);
    if (*dwec) return cmd_dwec(da);
    if (*cert) return cmd_certify(ca);
    if (*exp) return cmd_export(ea);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const TraceParseError& e) {
    std::cerr << "trace error: " << e.what() << '\n';
    return kUsage;
  } catch (const CaseGap& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
