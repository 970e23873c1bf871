#include "nonblock/lpcert.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "nonblock/bounds.hpp"
#include "nonblock/error.hpp"

namespace nonblock {

namespace {

AddressSetCache& cache() {
  static AddressSetCache c;
  return c;
}

std::int64_t find_pair(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs, std::uint64_t a,
                       std::uint64_t b) {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(a, b));
  if (it == pairs.end() || *it != std::make_pair(a, b)) return -1;
  return it - pairs.begin();
}

void require_shape(const LpInstance& inst, const DualSolution& y) {
  const auto N = inst.sets->radix().count();
  if (y.alpha.size() != inst.sets->window_count() || y.beta.size() != inst.uw.size() || y.gamma.size() != N ||
      y.delta.size() != N || y.eps.size() != N)
    throw ArgumentError("dual solution does not match the instance");
}

void require_shape(const LpInstance& inst, const PrimalSolution& x) {
  if (x.x_uw.size() != inst.uw.size() || x.x_uv.size() != inst.uv.size())
    throw ArgumentError("primal solution does not match the instance");
}

std::string uw_name(std::uint64_t u, std::uint64_t w) { return "x_u" + std::to_string(u) + "_w" + std::to_string(w); }
std::string uv_name(std::uint64_t u, std::uint64_t v) { return "x_u" + std::to_string(u) + "_v" + std::to_string(v); }

void emit_sum(std::ostringstream& os, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0 && i % 8 == 0) os << "\n   ";
    os << (i == 0 ? " " : " + ") << names[i];
  }
}

bool in(int x, int lo, int hi) { return lo <= x && x <= hi; }

}  // namespace

std::int64_t LpInstance::uw_index(std::uint64_t u, std::uint64_t w) const { return find_pair(uw, u, w); }
std::int64_t LpInstance::uv_index(std::uint64_t u, std::uint64_t v) const { return find_pair(uv, u, v); }

LpInstance build_instance(int d, int n, int t, std::int64_t f, const DaryString& a, std::span<const DaryString> B,
                          Mode mode) {
  if (a.base() != d || a.size() != n) throw ArgumentError("input address does not match d, n");
  if (t < 0 || t > n) throw ArgumentError("t=" + std::to_string(t) + " outside [0, n]");
  if (f < 1 || f > ipow(d, n)) throw ArgumentError("f outside [1, d^n]");
  if (static_cast<std::int64_t>(B.size()) > f) throw ArgumentError("request has more than f outputs");

  LpInstance inst;
  inst.d = d;
  inst.n = n;
  inst.t = t;
  inst.f = f;
  inst.mode = mode;
  inst.sets = cache().get(a, B, t);
  const AddressSets& s = *inst.sets;
  const int thr = inst.threshold();
  const std::uint64_t N = s.radix().count();
  for (std::uint64_t u = 0; u < N; ++u) {
    auto i = s.i_of(u);
    if (!i) continue;
    for (auto w : s.other_windows())
      if (*i + *s.j_of_window(w) >= thr) inst.uw.emplace_back(u, w);
    for (auto v : s.home_rest())
      if (*i + *s.j_of(v) >= thr) inst.uv.emplace_back(u, v);
  }
  std::sort(inst.uv.begin(), inst.uv.end());
  return inst;
}

LpInstance build_instance(int d, int n, int t, std::int64_t f, std::uint64_t a, std::span<const std::uint64_t> B,
                          Mode mode) {
  Radix radix(d, n);
  if (a >= radix.count()) throw ArgumentError("input out of range");
  std::vector<DaryString> outs;
  for (auto b : B) {
    if (b >= radix.count()) throw ArgumentError("output out of range");
    outs.push_back(DaryString::from_index(d, n, b));
  }
  return build_instance(d, n, t, f, DaryString::from_index(d, n, a), outs, mode);
}

LpInstance canonical_instance(int d, int n, int t, std::int64_t f, std::int64_t k, Mode mode) {
  if (t < 0 || t > n) throw ArgumentError("t=" + std::to_string(t) + " outside [0, n]");
  if (k < 1 || k > ipow(d, t)) throw ArgumentError("k outside [1, d^t]");
  std::vector<std::uint64_t> B;
  for (std::int64_t b = 0; b < k; ++b) B.push_back(static_cast<std::uint64_t>(b));
  return build_instance(d, n, t, f, 0, B, mode);
}

PrimalSolution zero_primal(const LpInstance& inst) {
  return {std::vector<Rational>(inst.uw.size()), std::vector<Rational>(inst.uv.size())};
}

DualSolution zero_dual(const LpInstance& inst) {
  const auto N = inst.sets->radix().count();
  DualSolution y;
  y.alpha.assign(inst.sets->window_count(), Rational(0));
  y.beta.assign(inst.uw.size(), Rational(0));
  y.gamma.assign(N, Rational(0));
  y.delta.assign(N, Rational(0));
  y.eps.assign(N, Rational(0));
  return y;
}

Rational primal_objective(const LpInstance& inst, const PrimalSolution& x) {
  require_shape(inst, x);
  Rational sum;
  for (const auto& v : x.x_uw) sum += v;
  for (const auto& v : x.x_uv) sum += v;
  return sum;
}

Rational dual_objective(const LpInstance& inst, const DualSolution& y) {
  require_shape(inst, y);
  Rational a, rest, e;
  for (const auto& v : y.alpha) a += v;
  for (const auto& v : y.beta) rest += v;
  for (const auto& v : y.gamma) rest += v;
  for (const auto& v : y.delta) rest += v;
  for (const auto& v : y.eps) e += v;
  return rpow(inst.d, inst.t) * a + rest + Rational(inst.f) * e;
}

std::vector<Violation> primal_violations(const LpInstance& inst, const PrimalSolution& x, std::size_t limit) {
  require_shape(inst, x);
  std::vector<Violation> out;
  auto add = [&](const char* name, std::string detail) {
    if (out.size() < limit) out.push_back({name, std::move(detail)});
  };
  std::map<std::uint64_t, Rational> per_w, per_v, home_u, fan_u;
  for (std::size_t i = 0; i < inst.uw.size(); ++i) {
    const auto [u, w] = inst.uw[i];
    const Rational& val = x.x_uw[i];
    if (val < 0) add("nonneg", uw_name(u, w) + " = " + val.str());
    if (val > 1) add("window-unit", uw_name(u, w) + " = " + val.str() + " > 1");
    per_w[w] += val;
    fan_u[u] += val;
  }
  for (std::size_t i = 0; i < inst.uv.size(); ++i) {
    const auto [u, v] = inst.uv[i];
    const Rational& val = x.x_uv[i];
    if (val < 0) add("nonneg", uv_name(u, v) + " = " + val.str());
    per_v[v] += val;
    home_u[u] += val;
    fan_u[u] += val;
  }
  const Rational cap = rpow(inst.d, inst.t);
  for (const auto& [w, s] : per_w)
    if (s > cap) add("window-capacity", "window " + std::to_string(w) + " sum " + s.str() + " > " + cap.str());
  for (const auto& [u, s] : home_u)
    if (s > 1) add("home-unit", "input " + std::to_string(u) + " home sum " + s.str() + " > 1");
  for (const auto& [v, s] : per_v)
    if (s > 1) add("output-unit", "output " + std::to_string(v) + " sum " + s.str() + " > 1");
  for (const auto& [u, s] : fan_u)
    if (s > inst.f) add("fanout", "input " + std::to_string(u) + " sum " + s.str() + " > " + std::to_string(inst.f));
  return out;
}

std::vector<Violation> dual_violations(const LpInstance& inst, const DualSolution& y, std::size_t limit) {
  require_shape(inst, y);
  std::vector<Violation> out;
  auto add = [&](const char* name, std::string detail) {
    if (out.size() < limit) out.push_back({name, std::move(detail)});
  };
  auto nonneg = [&](const std::vector<Rational>& vals, const char* name) {
    for (std::size_t i = 0; i < vals.size(); ++i)
      if (vals[i] < 0) add("nonneg", std::string(name) + "[" + std::to_string(i) + "] = " + vals[i].str());
  };
  nonneg(y.alpha, "alpha");
  nonneg(y.beta, "beta");
  nonneg(y.gamma, "gamma");
  nonneg(y.delta, "delta");
  nonneg(y.eps, "eps");
  for (std::size_t i = 0; i < inst.uw.size(); ++i) {
    const auto [u, w] = inst.uw[i];
    if (y.alpha[w] + y.beta[i] + y.eps[u] < 1)
      add("DC-1", "DC-1 violated at u=" + std::to_string(u) + " w=" + std::to_string(w));
  }
  for (const auto& [u, v] : inst.uv)
    if (y.gamma[u] + y.delta[v] + y.eps[u] < 1)
      add("DC-2", "DC-2 violated at u=" + std::to_string(u) + " v=" + std::to_string(v));
  return out;
}

void check_primal(const LpInstance& inst, const PrimalSolution& x) {
  auto v = primal_violations(inst, x, 1);
  if (!v.empty()) throw CertificateError(v.front().constraint, v.front().constraint + ": " + v.front().detail);
}

void check_dual(const LpInstance& inst, const DualSolution& y) {
  auto v = dual_violations(inst, y, 1);
  if (!v.empty()) throw CertificateError(v.front().constraint, v.front().detail);
}

Rational check_weak_duality(const LpInstance& inst, const PrimalSolution& x, const DualSolution& y) {
  check_primal(inst, x);
  check_dual(inst, y);
  Rational gap = dual_objective(inst, y) - primal_objective(inst, x);
  if (gap < 0) throw CertificateError("weak-duality", "dual objective below primal objective: gap " + gap.str());
  return gap;
}

PrimalSolution primal_from_state(const MultilogSim& sim, const LpInstance& inst) {
  const auto& cfg = sim.config();
  if (cfg.d != inst.d || cfg.n != inst.n || cfg.t != inst.t || cfg.mode != inst.mode)
    throw ArgumentError("simulator configuration does not match the instance");
  const AddressSets& s = *inst.sets;
  if (sim.input_busy(s.a())) throw ArgumentError("request input is busy");
  for (auto b : s.b())
    if (sim.output_busy(b)) throw ArgumentError("request output " + std::to_string(b) + " is busy");

  PrimalSolution x = zero_primal(inst);
  const Radix& r = s.radix();
  for (const auto& wit : sim.blocking_witnesses(s.a(), s.b())) {
    const std::uint64_t w = r.window(wit.v, inst.t);
    std::int64_t idx = w == s.home_window() ? inst.uv_index(wit.u, wit.v) : inst.uw_index(wit.u, w);
    if (idx < 0)
      throw std::logic_error("blocking branch (" + std::to_string(wit.u) + ", " + std::to_string(wit.v) +
                             ") has no LP variable");
    (w == s.home_window() ? x.x_uv : x.x_uw)[static_cast<std::size_t>(idx)] = 1;
  }
  return x;
}

DualSolution dual_family(const LpInstance& inst, int p, int q) {
  const int n = inst.n;
  const int t = inst.t;
  const int pmax = max_p(inst.mode, n, t);
  if (p < 0 || p > pmax) throw ArgumentError("p=" + std::to_string(p) + " outside [0, " + std::to_string(pmax) + "]");
  if (q < n - t || q > n) throw ArgumentError("q=" + std::to_string(q) + " outside [n-t, n]");
  const AddressSets& s = *inst.sets;
  const int th = inst.mode == Mode::LinkBlocking ? 0 : 1;
  const int split = inst.mode == Mode::LinkBlocking ? n / 2 : (n + 1) / 2;

  DualSolution y = zero_dual(inst);
  y.p = p;
  y.q = q;
  const std::uint64_t N = s.radix().count();
  for (std::uint64_t u = 0; u < N; ++u) {
    auto i = s.i_of(u);
    if (!i) continue;
    if (*i >= n - p) y.eps[u] = 1;
    if (q > n - t && in(*i, n - q + 1 - th, n - p - 1)) y.gamma[u] = 1;
  }
  for (auto v : s.home_rest())
    if (*s.j_of(v) >= q) y.delta[v] = 1;

  // j ranges carrying beta and alpha.
  int beta_lo = p + 1 - th, beta_hi = -1, alpha_lo = 0, alpha_hi = -1;
  if (t >= split) {
    beta_hi = n - t - 1;
  } else if (p + 1 <= t) {
    beta_hi = t - th;
    alpha_lo = t + 1 - th;
    alpha_hi = n - t - 1;
  } else {
    alpha_lo = p + 1 - th;
    alpha_hi = n - t - 1;
  }
  for (auto w : s.other_windows())
    if (in(*s.j_of_window(w), alpha_lo, alpha_hi)) y.alpha[w] = 1;
  for (std::size_t idx = 0; idx < inst.uw.size(); ++idx) {
    const auto [u, w] = inst.uw[idx];
    const int j = *s.j_of_window(w);
    const int i = *s.i_of(u);
    if (in(j, beta_lo, beta_hi) && in(i, n - th - j, n - p - 1)) y.beta[idx] = 1;
  }
  return y;
}

Rational union_bound_objective(const LpInstance& inst, const DualSolution& y) {
  if (y.q < 0) throw ArgumentError("union bound needs a family dual");
  const auto& s = *inst.sets;
  std::int64_t tail = 0;
  for (auto v : s.home_rest())
    if (*s.j_of(v) >= y.q) ++tail;
  const Rational k(inst.k());
  const Rational bound = min(rpow(inst.d, inst.t) - k, k * (rpow(inst.d, inst.n - y.q) - 1));
  return dual_objective(inst, y) - Rational(tail) + bound;
}

const char* to_string(SpecialVariant v) {
  switch (v) {
    case SpecialVariant::Auto: return "auto";
    case SpecialVariant::LinkLargeFanout: return "link-large-f";
    case SpecialVariant::LinkSmallFanout: return "link-small-f";
    case SpecialVariant::CfAllOutputs: return "cf-all-outputs";
    case SpecialVariant::CfTopLevel: return "cf-top-level";
    case SpecialVariant::CfSmallFanout: return "cf-small-f";
  }
  return "unknown";
}

SpecialVariant resolve_variant(const LpInstance& inst, SpecialVariant v) {
  if (v != SpecialVariant::Auto) return v;
  const int d = inst.d, n = inst.n;
  if (inst.mode == Mode::LinkBlocking)
    return inst.f > ipow(d, n - 2) ? SpecialVariant::LinkLargeFanout : SpecialVariant::LinkSmallFanout;
  const std::int64_t thr = ipow(d, n - 2) * (d - 1);
  if (inst.f <= thr) return SpecialVariant::CfSmallFanout;
  return inst.k() > thr ? SpecialVariant::CfAllOutputs : SpecialVariant::CfTopLevel;
}

DualSolution dual_special_t_eq_n(const LpInstance& inst, SpecialVariant variant) {
  const int n = inst.n;
  if (inst.t != n) throw ArgumentError("special duals need t = n");
  if (n < 2) throw ArgumentError("special duals need n >= 2");
  variant = resolve_variant(inst, variant);
  const bool link_variant = variant == SpecialVariant::LinkLargeFanout || variant == SpecialVariant::LinkSmallFanout;
  if (link_variant != (inst.mode == Mode::LinkBlocking))
    throw ArgumentError(std::string("variant ") + to_string(variant) + " does not match mode " + to_string(inst.mode));

  const AddressSets& s = *inst.sets;
  int gamma_from = n, delta_from = n;  // i >= gamma_from, j >= delta_from
  const int r = floor_log(inst.d, inst.f);
  switch (variant) {
    case SpecialVariant::LinkLargeFanout:
      gamma_from = 1;
      break;
    case SpecialVariant::LinkSmallFanout: {
      const int q = static_cast<int>(floor_div(n + r, 2)) + 1;
      gamma_from = n - q + 1;
      delta_from = q;
      break;
    }
    case SpecialVariant::CfAllOutputs:
      delta_from = 0;
      break;
    case SpecialVariant::CfTopLevel:
      gamma_from = 1;
      delta_from = n - 1;
      break;
    case SpecialVariant::CfSmallFanout: {
      const int p = static_cast<int>(ceil_div(n - r - 1, 2));
      gamma_from = p;
      delta_from = n - p;
      break;
    }
    case SpecialVariant::Auto:
      break;
  }
  DualSolution y = zero_dual(inst);
  const std::uint64_t N = s.radix().count();
  for (std::uint64_t u = 0; u < N; ++u)
    if (auto i = s.i_of(u); i && *i >= gamma_from) y.gamma[u] = 1;
  for (auto v : s.home_rest())
    if (*s.j_of(v) >= delta_from) y.delta[v] = 1;
  return y;
}

std::string export_lp(const LpInstance& inst) {
  std::ostringstream os;
  const auto& s = *inst.sets;
  os << "\\ blocking LP d=" << inst.d << " n=" << inst.n << " t=" << inst.t << " f=" << inst.f
     << " k=" << inst.k() << " mode=" << to_string(inst.mode) << " a=" << s.a() << "\n";
  os << "Maximize\n obj:";
  std::vector<std::string> all;
  for (const auto& [u, w] : inst.uw) all.push_back(uw_name(u, w));
  for (const auto& [u, v] : inst.uv) all.push_back(uv_name(u, v));
  emit_sum(os, all);
  os << "\nSubject To\n";

  std::map<std::uint64_t, std::vector<std::string>> by_w, home_u, by_v, fan_u;
  for (const auto& [u, w] : inst.uw) {
    by_w[w].push_back(uw_name(u, w));
    fan_u[u].push_back(uw_name(u, w));
  }
  for (const auto& [u, v] : inst.uv) {
    home_u[u].push_back(uv_name(u, v));
    by_v[v].push_back(uv_name(u, v));
    fan_u[u].push_back(uv_name(u, v));
  }
  auto block = [&](const char* prefix, const std::map<std::uint64_t, std::vector<std::string>>& rows, std::int64_t rhs) {
    for (const auto& [key, names] : rows) {
      os << " " << prefix << key << ":";
      emit_sum(os, names);
      os << " <= " << rhs << "\n";
    }
  };
  block("cap_w", by_w, ipow(inst.d, inst.t));
  block("home_u", home_u, 1);
  block("out_v", by_v, 1);
  block("fan_u", fan_u, inst.f);
  os << "Bounds\n";
  for (const auto& [u, w] : inst.uw) os << " 0 <= " << uw_name(u, w) << " <= 1\n";
  for (const auto& [u, v] : inst.uv) os << " " << uv_name(u, v) << " >= 0\n";
  os << "End\n";
  return os.str();
}

}  // namespace nonblock
