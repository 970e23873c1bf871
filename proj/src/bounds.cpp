#include "nonblock/bounds.hpp"

#include <algorithm>

#include "nonblock/error.hpp"

namespace nonblock {

namespace {

void check_dn(int d, int n) {
  if (d < 2) throw ArgumentError("d must be >= 2");
  if (n < 1) throw ArgumentError("n must be >= 1");
  if (n > 30) throw ArgumentError("n too large");
}

void check_tf(int d, int n, int t, std::int64_t f) {
  check_dn(d, n);
  if (t < 0 || t >= n) throw ArgumentError("t=" + std::to_string(t) + " outside [0, n-1]");
  if (f < 1 || f > ipow(d, n)) throw ArgumentError("f=" + std::to_string(f) + " outside [1, d^n]");
}

void check_cost_args(int d, int n, int t, std::int64_t f, std::int64_t k, int p, int q, Mode mode) {
  check_tf(d, n, t, f);
  if (k < 1 || k > std::min(f, ipow(d, t))) throw ArgumentError("k=" + std::to_string(k) + " outside [1, min(f, d^t)]");
  const int pmax = max_p(mode, n, t);
  if (p < 0 || p > pmax) throw ArgumentError("p=" + std::to_string(p) + " outside [0, " + std::to_string(pmax) + "]");
  if (q < n - t || q > n) throw ArgumentError("q=" + std::to_string(q) + " outside [n-t, n]");
}

struct Pow {
  int d;
  Rational operator()(int e) const { return rpow(d, e); }
};

int ceil_half(int x) { return static_cast<int>(ceil_div(x, 2)); }
int floor_half(int x) { return static_cast<int>(floor_div(x, 2)); }

BoundResult finish(std::vector<std::pair<std::string, Rational>> rows, int d, int n, int t, std::int64_t f) {
  if (rows.empty())
    throw CaseGap("no table row covers d=" + std::to_string(d) + " n=" + std::to_string(n) + " t=" + std::to_string(t) +
                  " f=" + std::to_string(f));
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  BoundResult r;
  r.value = rows.front().second;
  r.m_sufficient = 1 + r.value.ceil();
  for (const auto& [name, v] : rows) {
    r.matched.push_back(name);
    r.branch += (r.branch.empty() ? "" : "+") + name;
  }
  r.d = d;
  r.n = n;
  r.t = t;
  r.f = f;
  return r;
}

}  // namespace

int max_p(Mode mode, int n, int t) { return mode == Mode::LinkBlocking ? n - t - 1 : n - t; }

std::string c_cost_branch(int d, int n, int t, int p, int q) {
  (void)d;
  const bool tail = q == n - t;
  if (t >= n / 2) return tail ? "c1" : "c2";
  if (p + 1 <= t) return tail ? "c3" : "c4";
  return tail ? "c5" : "c6";
}

std::string g_cost_branch(int d, int n, int t, int p, int q) {
  (void)d;
  const bool tail = q == n - t;
  if (t >= ceil_half(n)) return tail ? "g1" : "g2";
  if (p + 1 <= t) return tail ? "g3" : "g4";
  return tail ? "g5" : "g6";
}

Rational c_cost(int d, int n, int t, std::int64_t f, std::int64_t k, int p, int q) {
  check_cost_args(d, n, t, f, k, p, q, Mode::LinkBlocking);
  const Pow P{d};
  const Rational eps = Rational(f) * (P(p) - 1);
  const Rational tail = min(P(t) - k, Rational(k) * (P(n - q) - 1));
  const std::string b = c_cost_branch(d, n, t, p, q);
  if (b == "c1" || b == "c2") {
    const Rational base = eps + Rational(n - t - 1 - p) * (P(n - t) - P(n - t - 1)) - P(n - t - 1);
    return b == "c1" ? base + P(p) + P(t) - k : base + P(q - 1) + tail;
  }
  if (b == "c3" || b == "c4") {
    const Rational base = eps + Rational(t - p) * (P(n - t) - P(n - t - 1)) + P(n + p - 2 * t - 1);
    return b == "c3" ? base - k : base - P(t) + P(q - 1) - P(p) + tail;
  }
  return b == "c5" ? eps + P(n - p - 1) - k : eps + P(n - p - 1) - P(t) + P(q - 1) - P(p) + tail;
}

Rational g_cost(int d, int n, int t, std::int64_t f, std::int64_t k, int p, int q) {
  check_cost_args(d, n, t, f, k, p, q, Mode::CrosstalkFree);
  const Pow P{d};
  const Rational eps = Rational(f) * (P(p) - 1);
  const Rational tail = min(P(t) - k, Rational(k) * (P(n - q) - 1));
  const std::string b = g_cost_branch(d, n, t, p, q);
  if (b == "g1" || b == "g2") {
    const Rational base = eps + Rational(n - t - p) * (P(n - t + 1) - P(n - t)) - P(n - t);
    return b == "g1" ? base + P(p) + P(t) - k : base + P(q) + tail;
  }
  if (b == "g3" || b == "g4") {
    const Rational base = eps + Rational(t - p) * (P(n - t + 1) - P(n - t)) + P(n + p - 2 * t);
    return b == "g3" ? base - k : base - P(t) + P(q) - P(p) + tail;
  }
  return b == "g5" ? eps + P(n - p) - k : eps + P(n - p) - P(t) + P(q) - P(p) + tail;
}

Rational cost(Mode mode, int d, int n, int t, std::int64_t f, std::int64_t k, int p, int q) {
  return mode == Mode::LinkBlocking ? c_cost(d, n, t, f, k, p, q) : g_cost(d, n, t, f, k, p, q);
}

BoundResult C_bound(int d, int n, int t, std::int64_t f) {
  check_tf(d, n, t, f);
  const Pow P{d};
  const int r = floor_log(d, f);
  const int half = n / 2;
  const Rational F(f);
  const Rational dm1(d - 1);
  std::vector<std::pair<std::string, Rational>> rows;
  if (t < half && r <= n - 2 * t - 1) {
    const int c = ceil_half(n - r);
    rows.emplace_back("C1", F * (P(c - 1) - 1) + P(n - c) - 1);
  }
  if (t < half && r >= n - 2 * t) rows.emplace_back("C2", Rational(t) * dm1 * P(n - t - 1) + P(n - 2 * t - 1) - 1);
  if (t >= half && r >= n - t)
    rows.emplace_back("C3", Rational((n - t - 1) * (d - 1) - 1) * P(n - t - 1) + P(t) - dm1 * P(2 * t - n - 1));
  if (t >= half && 2 * t - n - 2 < r && r <= n - t - 1)
    rows.emplace_back("C4", F * (P(n - t - r - 1) - 1) + Rational(r * (d - 1) - 1) * P(n - t - 1) + P(n - t - r - 1) + P(t) -
                                dm1 * P(2 * t - n - 1));
  if (t >= half && r <= std::min(2 * t - n - 2, n - t - 1)) {
    const int fl = floor_half(n + r);
    rows.emplace_back("C5", F * (P(n - t - r - 1) - 1) + Rational(r * (d - 1) - 1) * P(n - t - 1) + P(fl) + F * (P(n - fl - 1) - 1));
  }
  return finish(std::move(rows), d, n, t, f);
}

BoundResult G_bound(int d, int n, int t, std::int64_t f, GForm form) {
  check_tf(d, n, t, f);
  const Pow P{d};
  const int r = floor_log(d, f);
  const Rational F(f);
  const Rational dm1(d - 1);
  const bool printed = form == GForm::Printed;
  const int fl = floor_half(r + n + 1);
  std::vector<std::pair<std::string, Rational>> rows;
  if (2 * t > n) {
    if (r >= std::max(2 * t - n - 2, n - t + 1)) {
      const int e = printed ? 2 * t - n + 1 : 2 * t - n - 2;
      rows.emplace_back("G1", P(n - t) * Rational((n - t) * (d - 1) - 1) + P(t) - P(e) * dm1);
    }
    if (r <= std::min(2 * t - n - 3, n - t))
      rows.emplace_back("G2", F * (P(n - t - r) - 1) + Rational(r) * P(n - t) * dm1 - P(n - t) + P(fl) + F * (P(n - fl) - 1));
    if (n - t + 1 <= r && r <= 2 * t - n - 3)
      rows.emplace_back("G3", P(n - t) * Rational((n - t) * (d - 1) - 1) + P(fl) + F * (P(n - fl) - 1));
    if (2 * t - n - 2 <= r && r <= n - t) {
      Rational v = F * (P(n - t - r) - 1) + P(n - t) * Rational(r * (d - 1) - 1) + P(t) - P(2 * t - n - 2) * dm1;
      if (!printed) v += P(n - t - r) - 1;
      rows.emplace_back("G4", v);
    }
  }
  if (2 * t == n) {
    const int factor = printed ? t - 1 : d - 1;
    rows.emplace_back("G5", P(n - t) * Rational((n - t) * factor - 1) + P(t));
  }
  if (2 * t < n) {
    if (r <= n - 2 * t && F <= P(n - 2 * t) * dm1) {
      const int c = ceil_half(n - r - 1);
      rows.emplace_back("G6", F * (P(c) - 1) + P(n - c) - 1);
    }
    if (r <= n - 2 * t && F > P(n - 2 * t) * dm1)
      rows.emplace_back("G7", F * (P(t - 1) - 1) + P(n - t - 1) * Rational(d * d - d + 1) - 1);
    if (n - 2 * t + 1 <= r && r <= n - t) {
      const int coeff = printed ? 2 * t - n - r : 2 * t - n + r;
      rows.emplace_back("G8", F * (P(n - t - r) - 1) + Rational(coeff) * dm1 * P(n - t) + P(2 * n - 3 * t - r) - 1);
    }
    if (n - t < r) rows.emplace_back("G9", Rational(t) * dm1 * P(n - t) + P(n - 2 * t) - 1);
  }
  return finish(std::move(rows), d, n, t, f);
}

BoundResult table_bound(Mode mode, int d, int n, int t, std::int64_t f) {
  return mode == Mode::LinkBlocking ? C_bound(d, n, t, f) : G_bound(d, n, t, f);
}

Enumerated sufficient_m_enumerated(int d, int n, int t, std::int64_t f, Mode mode) {
  check_tf(d, n, t, f);
  Enumerated out{Rational(0), 1, 0, 0, 0};
  bool first = true;
  const std::int64_t kmax = std::min(f, ipow(d, t));
  for (std::int64_t k = 1; k <= kmax; ++k) {
    Rational best;
    int bp = 0, bq = 0;
    bool have = false;
    for (int p = 0; p <= max_p(mode, n, t); ++p)
      for (int q = n - t; q <= n; ++q) {
        const Rational c = cost(mode, d, n, t, f, k, p, q);
        if (!have || c < best) {
          best = c;
          bp = p;
          bq = q;
          have = true;
        }
      }
    if (first || best > out.max_min) {
      out.max_min = best;
      out.worst_k = k;
      out.best_p = bp;
      out.best_q = bq;
      first = false;
    }
  }
  out.m_sufficient = 1 + out.max_min.ceil();
  return out;
}

std::int64_t clos_snb(int n) {
  if (n < 1) throw ArgumentError("n must be >= 1");
  return 2 * static_cast<std::int64_t>(n) - 1;
}

std::int64_t clos_wsnb_r2(int n) {
  if (n < 1) throw ArgumentError("n must be >= 1");
  return 3 * static_cast<std::int64_t>(n) / 2;
}

std::int64_t clos_multirate(int n, MultirateScheme scheme) {
  if (n < 1) throw ArgumentError("n must be >= 1");
  const std::int64_t N = n;
  if (scheme == MultirateScheme::FourType) return 2 * N + ceil_div(3 * N, 8) + ceil_div(3 * N, 10) + 3 * N;
  return (Rational(56355, 10000) * Rational(N)).ceil() + 4;
}

std::int64_t hwang_unicast(int d, int n) {
  check_dn(d, n);
  return ipow(d, ceil_half(n) - 1) + ipow(d, n / 2) - 1;
}

Rational wang07(int d, int n, std::int64_t f) {
  check_dn(d, n);
  if (f < 1 || f > ipow(d, n)) throw ArgumentError("f outside [1, d^n]");
  const int r = floor_log(d, f);
  const int c = ceil_half(n - r);
  return Rational(f) * (rpow(d, c - 1) - 1) + rpow(d, n - c);
}

std::int64_t snb_fcast_t_eq_n(int d, int n, std::int64_t f) {
  check_dn(d, n);
  if (n < 2) throw ArgumentError("n must be >= 2");
  if (f < 1 || f > ipow(d, n)) throw ArgumentError("f outside [1, d^n]");
  if (f > ipow(d, n - 2)) return ipow(d, n - 1);
  const int r = floor_log(d, f);
  return ipow(d, floor_half(n + r)) + f * (ipow(d, ceil_half(n - r - 2)) - 1);
}

std::int64_t cf_snb_fcast_t_eq_n(int d, int n, std::int64_t f) {
  check_dn(d, n);
  if (n < 2) throw ArgumentError("n must be >= 2");
  if (f < 1 || f > ipow(d, n)) throw ArgumentError("f outside [1, d^n]");
  if (f > ipow(d, n - 2) * (d - 1)) return ipow(d, n) - ipow(d, n - 2) * (d - 1);
  const int r = floor_log(d, f);
  return ipow(d, floor_half(n + r + 1)) + f * (ipow(d, ceil_half(n - r - 1)) - 1);
}

Rational danilewicz(int d, int n, int t) {
  check_dn(d, n);
  if (t < 0 || t > n - 1) throw ArgumentError("t outside [0, n-1]");
  const Pow P{d};
  const Rational dm1(d - 1);
  if (t <= n / 2 - 1) return P(n - 2 * t - 1) + Rational(t) * P(n - t - 1) * dm1;
  return P(n - t - 1) * Rational((d - 1) * (n - t - 1) - 1) + P(t) - P(2 * t - n - 1) * dm1 + 1;
}

Rational cf_wsnb_window(int d, int n, int t) {
  check_dn(d, n);
  if (t < 0 || t > n - 1) throw ArgumentError("t outside [0, n-1]");
  const Pow P{d};
  const Rational dm1(d - 1);
  if (2 * t < n) return P(n - 2 * t) + Rational(t) * P(n - t) * dm1;
  const Rational head = P(n - t) * Rational((n - t) * (d - 1) - 1) + P(t) + 1;
  if (2 * t == n) return head;
  return head - P(2 * t - n - 2) * dm1;
}

Rational h(int d, int n, std::int64_t k) {
  check_dn(d, n);
  if (k < 1) throw ArgumentError("k must be >= 1");
  const int x = floor_log(d, k);
  const int fl = floor_half(n + x);
  return rpow(d, fl) + Rational(k) * (rpow(d, n - fl - 1) - 1);
}

Rational hbar(int d, int n, std::int64_t k) {
  check_dn(d, n);
  if (k < 1) throw ArgumentError("k must be >= 1");
  const int x = floor_log(d, k);
  const int fl = floor_half(x + n + 1);
  return rpow(d, fl) + Rational(k) * (rpow(d, n - fl) - 1);
}

std::int64_t multilog_m_sufficient(Mode mode, int d, int n, int t, std::int64_t f) {
  if (t == n) return mode == Mode::LinkBlocking ? snb_fcast_t_eq_n(d, n, f) : cf_snb_fcast_t_eq_n(d, n, f);
  return table_bound(mode, d, n, t, f).m_sufficient;
}

}  // namespace nonblock
