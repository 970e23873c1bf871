#include "nonblock/dwec.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "nonblock/error.hpp"
#include "nonblock/exact_lp.hpp"

namespace nonblock {

namespace {

void check_breakpoints(const std::vector<Rational>& bp) {
  if (bp.empty() || bp.front() != Rational(1, 2)) throw ArgumentError("first breakpoint must be 1/2");
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (bp[i] <= 0 || bp[i] >= 1) throw ArgumentError("breakpoint " + bp[i].str() + " outside (0, 1)");
    if (i > 0 && bp[i] >= bp[i - 1]) throw ArgumentError("breakpoints must be strictly descending");
  }
}

}  // namespace

Rational DwecScheme::upper(int type) const {
  if (type < 0 || type >= types()) throw ArgumentError("type out of range");
  return type == 0 ? Rational(1) : breakpoints[static_cast<std::size_t>(type - 1)];
}

Rational DwecScheme::lower(int type) const {
  if (type < 0 || type >= types()) throw ArgumentError("type out of range");
  return type + 1 == types() ? Rational(0) : breakpoints[static_cast<std::size_t>(type)];
}

int DwecScheme::classify(const Rational& w) const {
  if (w <= 0 || w > 1) throw ArgumentError("weight " + w.str() + " outside (0, 1]");
  int type = 0;
  while (type < static_cast<int>(breakpoints.size()) && w <= breakpoints[static_cast<std::size_t>(type)]) ++type;
  return type;
}

Rational DwecScheme::total() const {
  Rational s = 0;
  for (const auto& xi : x) s += xi;
  return s;
}

DwecScheme DwecScheme::four_type() {
  return {{Rational(1, 2), Rational(2, 5), Rational(1, 3)}, {Rational(2), Rational(3, 8), Rational(3, 10), Rational(3)}};
}

DwecScheme DwecScheme::five_type() {
  std::vector<Rational> bp{Rational(1, 2), Rational(2, 5), Rational(1, 3), Rational(11, 43)};
  return {bp, derive_constants(bp).x};
}

DerivedConstants derive_constants(const std::vector<Rational>& breakpoints) {
  check_breakpoints(breakpoints);
  DwecScheme s{breakpoints, {}};
  const int K = s.types() - 1;
  DerivedConstants out;
  out.beta.assign(static_cast<std::size_t>(K + 1), std::vector<Rational>(static_cast<std::size_t>(K + 1), Rational(0)));

  for (int i = 1; i <= K; ++i) {
    const Rational threshold = 1 - s.upper(i);
    for (int j = i; j <= K; ++j) {
      // Multisets of types 1..j whose largest possible sum exceeds the
      // threshold; the blocked weight is at least max(threshold, smallest sum).
      std::vector<int> cap(static_cast<std::size_t>(j + 1), 0);
      for (int type = 1; type <= j; ++type) cap[static_cast<std::size_t>(type)] = (threshold / s.upper(type)).floor() + 1;
      std::optional<Rational> best;
      std::vector<int> cnt(static_cast<std::size_t>(j + 1), 0);
      std::function<void(int, Rational, Rational)> rec = [&](int type, Rational lo, Rational hi) {
        if (type > j) {
          if (hi > threshold) {
            Rational v = max(threshold, lo);
            if (!best || v < *best) best = v;
          }
          return;
        }
        for (int c = 0; c <= cap[static_cast<std::size_t>(type)]; ++c)
          rec(type + 1, lo + Rational(c) * s.lower(type), hi + Rational(c) * s.upper(type));
      };
      rec(1, 0, 0);
      if (!best) throw InfeasibleScheme("no blocking configuration for type " + std::to_string(i));
      out.beta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *best;
    }
  }

  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  std::vector<Rational> row0(static_cast<std::size_t>(K + 1), Rational(0));
  row0[0] = 1;
  A.push_back(row0);
  b.push_back(2);
  for (int i = 1; i <= K; ++i) {
    A.push_back(out.beta[static_cast<std::size_t>(i)]);
    b.push_back(2);
  }
  std::vector<Rational> c(static_cast<std::size_t>(K + 1), Rational(1));
  auto sol = minimize_covering_lp(A, b, c);
  if (!sol) throw InfeasibleScheme("blocking LP is infeasible");
  out.x = sol->x;
  out.objective = sol->objective;
  return out;
}

DwecState::DwecState(DwecScheme scheme, int vertex_count) : scheme_(std::move(scheme)) {
  if (vertex_count < 2) throw ArgumentError("base graph needs at least two vertices");
  if (static_cast<int>(scheme_.x.size()) != scheme_.types()) throw ArgumentError("scheme needs one constant per type");
  if (scheme_.x[0] < 2) throw ArgumentError("x_0 must be at least 2");
  classes_.assign(static_cast<std::size_t>(scheme_.types()), {});
  load_.assign(static_cast<std::size_t>(vertex_count), {});
  weight_.assign(static_cast<std::size_t>(vertex_count), Rational(0));
  heavy_.assign(static_cast<std::size_t>(vertex_count), 0);
}

std::int64_t DwecState::opt_lower() const { return std::max(w_bar_.ceil(), delta_bar_); }

const DwecEdge& DwecState::edge(std::uint64_t id) const {
  auto it = live_.find(id);
  if (it == live_.end()) throw SimError(SimErrc::UnknownId, "edge " + std::to_string(id) + " not live");
  return it->second;
}

Rational DwecState::color_load(int u, int color) const {
  const auto& row = load_.at(static_cast<std::size_t>(u));
  return static_cast<std::size_t>(color) < row.size() ? row[static_cast<std::size_t>(color)] : Rational(0);
}

void DwecState::grow() {
  for (int i = 0; i < scheme_.types(); ++i) {
    const Rational scale = i == 0 ? Rational(delta_bar_) : w_bar_;
    const auto target = static_cast<std::size_t>((scheme_.x[static_cast<std::size_t>(i)] * scale).ceil());
    auto& cls = classes_[static_cast<std::size_t>(i)];
    while (cls.size() < target) {
      cls.push_back(static_cast<int>(color_class_.size()));
      color_class_.push_back(i);
    }
  }
  for (auto& row : load_) row.resize(color_class_.size(), Rational(0));
}

bool DwecState::fits(int u, int v, int color, const Rational& w) const {
  const auto c = static_cast<std::size_t>(color);
  return load_[static_cast<std::size_t>(u)][c] + w <= 1 && load_[static_cast<std::size_t>(v)][c] + w <= 1;
}

int DwecState::arrive(std::uint64_t id, int u, int v, const Rational& w) {
  if (live_.count(id)) throw SimError(SimErrc::DuplicateId, "edge " + std::to_string(id) + " already live");
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) throw ArgumentError("endpoint outside base graph");
  if (u == v) throw ArgumentError("self-loop");
  const int type = scheme_.classify(w);
  const auto su = static_cast<std::size_t>(u);
  const auto sv = static_cast<std::size_t>(v);
  weight_[su] += w;
  weight_[sv] += w;
  w_bar_ = max(w_bar_, max(weight_[su], weight_[sv]));
  if (type == 0) {
    ++heavy_[su];
    ++heavy_[sv];
    delta_bar_ = std::max({delta_bar_, heavy_[su], heavy_[sv]});
  }
  grow();

  int color = -1;
  const int first = type;
  const int last = type == 0 ? 0 : scheme_.types() - 1;
  for (int cls = first; cls <= last && color < 0; ++cls)
    for (int c : classes_[static_cast<std::size_t>(cls)])
      if (fits(u, v, c, w)) {
        color = c;
        break;
      }
  if (color < 0)
    throw ColoringFailure("no color for type-" + std::to_string(type) + " edge " + std::to_string(id) + " of weight " + w.str());
  load_[su][static_cast<std::size_t>(color)] += w;
  load_[sv][static_cast<std::size_t>(color)] += w;
  live_.emplace(id, DwecEdge{u, v, w, type, color});
  return color;
}

void DwecState::depart(std::uint64_t id) {
  auto it = live_.find(id);
  if (it == live_.end()) throw SimError(SimErrc::UnknownId, "edge " + std::to_string(id) + " not live");
  const auto& e = it->second;
  const auto su = static_cast<std::size_t>(e.u);
  const auto sv = static_cast<std::size_t>(e.v);
  load_[su][static_cast<std::size_t>(e.color)] -= e.w;
  load_[sv][static_cast<std::size_t>(e.color)] -= e.w;
  weight_[su] -= e.w;
  weight_[sv] -= e.w;
  if (e.type == 0) {
    --heavy_[su];
    --heavy_[sv];
  }
  live_.erase(it);
}

void DwecState::audit() const {
  auto fail = [](const std::string& what) { throw std::logic_error("dwec audit: " + what); };
  for (int i = 0; i < scheme_.types(); ++i) {
    const Rational scale = i == 0 ? Rational(delta_bar_) : w_bar_;
    const auto want = (scheme_.x[static_cast<std::size_t>(i)] * scale).ceil();
    if (static_cast<std::int64_t>(classes_[static_cast<std::size_t>(i)].size()) != want)
      fail("class " + std::to_string(i) + " has wrong size");
    for (int c : classes_[static_cast<std::size_t>(i)])
      if (color_class_.at(static_cast<std::size_t>(c)) != i) fail("color listed in two classes");
  }
  std::vector<std::vector<Rational>> load(load_.size(), std::vector<Rational>(color_class_.size(), Rational(0)));
  std::vector<Rational> weight(load_.size(), Rational(0));
  std::vector<std::int64_t> heavy(load_.size(), 0);
  for (const auto& [id, e] : live_) {
    const int cls = color_class_.at(static_cast<std::size_t>(e.color));
    if (e.type == 0 ? cls != 0 : (cls < e.type)) fail("edge " + std::to_string(id) + " colored from a forbidden class");
    for (int x : {e.u, e.v}) {
      load[static_cast<std::size_t>(x)][static_cast<std::size_t>(e.color)] += e.w;
      weight[static_cast<std::size_t>(x)] += e.w;
      if (e.type == 0) ++heavy[static_cast<std::size_t>(x)];
    }
  }
  for (std::size_t x = 0; x < load.size(); ++x) {
    if (weight[x] != weight_[x] || heavy[x] != heavy_[x]) fail("vertex totals out of sync");
    if (weight[x] > w_bar_ || heavy[x] > delta_bar_) fail("running maxima below current values");
    for (std::size_t c = 0; c < load[x].size(); ++c) {
      if (load[x][c] != load_[x][c]) fail("color loads out of sync");
      if (load[x][c] > 1) fail("vertex " + std::to_string(x) + " color " + std::to_string(c) + " overloaded");
    }
  }
}

int opt_exact(const std::vector<WeightedEdge>& edges, std::size_t max_edges) {
  if (edges.size() > max_edges) throw SizeLimitError("opt_exact limited to " + std::to_string(max_edges) + " edges");
  if (edges.empty()) return 0;
  int vertices = 0;
  for (const auto& e : edges) {
    if (e.w <= 0 || e.w > 1) throw ArgumentError("weight outside (0, 1]");
    vertices = std::max({vertices, e.u + 1, e.v + 1});
  }
  std::vector<WeightedEdge> order = edges;
  std::stable_sort(order.begin(), order.end(), [](const WeightedEdge& a, const WeightedEdge& b) { return b.w < a.w; });

  std::vector<Rational> total(static_cast<std::size_t>(vertices), Rational(0));
  std::vector<int> heavy(static_cast<std::size_t>(vertices), 0);
  for (const auto& e : order)
    for (int x : {e.u, e.v}) {
      total[static_cast<std::size_t>(x)] += e.w;
      if (e.w > Rational(1, 2)) ++heavy[static_cast<std::size_t>(x)];
    }
  std::int64_t lb = 1;
  for (int x = 0; x < vertices; ++x)
    lb = std::max({lb, total[static_cast<std::size_t>(x)].ceil(), static_cast<std::int64_t>(heavy[static_cast<std::size_t>(x)])});

  const int E = static_cast<int>(order.size());
  for (int k = static_cast<int>(lb); k <= E; ++k) {
    std::vector<std::vector<Rational>> load(static_cast<std::size_t>(vertices), std::vector<Rational>(static_cast<std::size_t>(k), Rational(0)));
    std::function<bool(int, int)> place = [&](int i, int used) {
      if (i == E) return true;
      const auto& e = order[static_cast<std::size_t>(i)];
      auto& lu = load[static_cast<std::size_t>(e.u)];
      auto& lv = load[static_cast<std::size_t>(e.v)];
      const int limit = std::min(k - 1, used);
      for (int c = 0; c <= limit; ++c) {
        const auto sc = static_cast<std::size_t>(c);
        if (lu[sc] + e.w > 1 || lv[sc] + e.w > 1) continue;
        lu[sc] += e.w;
        lv[sc] += e.w;
        const bool ok = place(i + 1, std::max(used, c + 1));
        lu[sc] -= e.w;
        lv[sc] -= e.w;
        if (ok) return true;
      }
      return false;
    };
    if (place(0, 0)) return k;
  }
  return E;
}

}  // namespace nonblock
