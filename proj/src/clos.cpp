#include "nonblock/clos.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "nonblock/error.hpp"

namespace nonblock {

void ClosConfig::validate() const {
  if (n1 < 1 || r1 < 1 || m < 1 || n2 < 1 || r2 < 1) throw ArgumentError("Clos parameters must be positive");
}

Terminal Terminal::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ArgumentError("terminal '" + text + "' is not <crossbar>:<port>");
  try {
    std::size_t used = 0;
    Terminal t{std::stoi(text.substr(0, colon), &used), 0};
    if (used != colon) throw ArgumentError("bad crossbar in '" + text + "'");
    const std::string port = text.substr(colon + 1);
    t.port = std::stoi(port, &used);
    if (used != port.size()) throw ArgumentError("bad port in '" + text + "'");
    return t;
  } catch (const std::logic_error&) {
    throw ArgumentError("terminal '" + text + "' is not <crossbar>:<port>");
  }
}

std::string Terminal::str() const { return std::to_string(crossbar) + ":" + std::to_string(port); }

ClosSpaceSim::ClosSpaceSim(const ClosConfig& cfg, std::uint64_t seed, bool random_fit)
    : cfg_(cfg), random_fit_(random_fit), rng_(seed) {
  cfg_.validate();
  in_used_.assign(static_cast<std::size_t>(cfg.n1 * cfg.r1), 0);
  out_used_.assign(static_cast<std::size_t>(cfg.n2 * cfg.r2), 0);
  mid_in_.assign(static_cast<std::size_t>(cfg.m * cfg.r1), 0);
  mid_out_.assign(static_cast<std::size_t>(cfg.m * cfg.r2), 0);
  pairs_.assign(static_cast<std::size_t>(cfg.m), {0, 0, 0, 0});
}

std::size_t ClosSpaceSim::in_index(Terminal t) const {
  if (t.crossbar < 1 || t.crossbar > cfg_.r1 || t.port < 1 || t.port > cfg_.n1)
    throw ArgumentError("input terminal " + t.str() + " out of range");
  return static_cast<std::size_t>((t.crossbar - 1) * cfg_.n1 + (t.port - 1));
}

std::size_t ClosSpaceSim::out_index(Terminal t) const {
  if (t.crossbar < 1 || t.crossbar > cfg_.r2 || t.port < 1 || t.port > cfg_.n2)
    throw ArgumentError("output terminal " + t.str() + " out of range");
  return static_cast<std::size_t>((t.crossbar - 1) * cfg_.n2 + (t.port - 1));
}

bool ClosSpaceSim::in_busy(Terminal t) const { return in_used_[in_index(t)] != 0; }
bool ClosSpaceSim::out_busy(Terminal t) const { return out_used_[out_index(t)] != 0; }

std::vector<Terminal> ClosSpaceSim::free_inputs() const {
  std::vector<Terminal> out;
  for (int I = 1; I <= cfg_.r1; ++I)
    for (int p = 1; p <= cfg_.n1; ++p)
      if (!in_busy({I, p})) out.push_back({I, p});
  return out;
}

std::vector<Terminal> ClosSpaceSim::free_outputs() const {
  std::vector<Terminal> out;
  for (int O = 1; O <= cfg_.r2; ++O)
    for (int p = 1; p <= cfg_.n2; ++p)
      if (!out_busy({O, p})) out.push_back({O, p});
  return out;
}

std::vector<int> ClosSpaceSim::available(int I, int O) const {
  std::vector<int> out;
  for (int mid = 0; mid < cfg_.m; ++mid)
    if (!mid_in_[static_cast<std::size_t>(mid * cfg_.r1 + I - 1)] && !mid_out_[static_cast<std::size_t>(mid * cfg_.r2 + O - 1)])
      out.push_back(mid + 1);
  return out;
}

void ClosSpaceSim::check_free(std::uint64_t id, Terminal in, Terminal out) const {
  if (reqs_.count(id)) throw SimError(SimErrc::DuplicateId, "request " + std::to_string(id) + " already active");
  if (in_busy(in)) throw SimError(SimErrc::TerminalBusy, "input " + in.str() + " busy");
  if (out_busy(out)) throw SimError(SimErrc::TerminalBusy, "output " + out.str() + " busy");
}

void ClosSpaceSim::commit(std::uint64_t id, Terminal in, Terminal out, int mid) {
  in_used_[in_index(in)] = 1;
  out_used_[out_index(out)] = 1;
  mid_in_[static_cast<std::size_t>(mid * cfg_.r1 + in.crossbar - 1)] = 1;
  mid_out_[static_cast<std::size_t>(mid * cfg_.r2 + out.crossbar - 1)] = 1;
  if (cfg_.r1 == 2 && cfg_.r2 == 2) ++pairs_[static_cast<std::size_t>(mid)][static_cast<std::size_t>((in.crossbar - 1) * 2 + out.crossbar - 1)];
  reqs_.emplace(id, Req{in, out, mid});
}

int ClosSpaceSim::snb_admit(std::uint64_t id, Terminal in, Terminal out, const CrossbarChooser& chooser) {
  check_free(id, in, out);
  auto avail = available(in.crossbar, out.crossbar);
  if (avail.empty()) return 0;
  int pick = avail.front();
  if (chooser) {
    pick = chooser(avail);
    if (!std::binary_search(avail.begin(), avail.end(), pick)) throw std::logic_error("chooser returned an unavailable crossbar");
  } else if (random_fit_) {
    std::uniform_int_distribution<std::size_t> d(0, avail.size() - 1);
    pick = avail[d(rng_)];
  }
  commit(id, in, out, pick - 1);
  return pick;
}

int ClosSpaceSim::benes_admit(std::uint64_t id, Terminal in, Terminal out) {
  if (cfg_.r1 != 2 || cfg_.r2 != 2) throw SimError(SimErrc::WrongTopology, "reuse rule needs r = 2");
  check_free(id, in, out);
  auto avail = available(in.crossbar, out.crossbar);
  if (avail.empty()) return 0;
  const auto diag = static_cast<std::size_t>((2 - in.crossbar) * 2 + (2 - out.crossbar));
  int pick = 0;
  for (int mid : avail)
    if (pairs_[static_cast<std::size_t>(mid - 1)][diag] > 0) {
      pick = mid;
      break;
    }
  if (!pick)
    for (int mid : avail) {
      const auto& pc = pairs_[static_cast<std::size_t>(mid - 1)];
      if (pc[0] + pc[1] + pc[2] + pc[3] > 0) {
        pick = mid;
        break;
      }
    }
  if (!pick) pick = avail.front();
  commit(id, in, out, pick - 1);
  return pick;
}

void ClosSpaceSim::release(std::uint64_t id) {
  auto it = reqs_.find(id);
  if (it == reqs_.end()) throw SimError(SimErrc::UnknownId, "request " + std::to_string(id) + " not active");
  const Req r = it->second;
  in_used_[in_index(r.in)] = 0;
  out_used_[out_index(r.out)] = 0;
  mid_in_[static_cast<std::size_t>(r.mid * cfg_.r1 + r.in.crossbar - 1)] = 0;
  mid_out_[static_cast<std::size_t>(r.mid * cfg_.r2 + r.out.crossbar - 1)] = 0;
  if (cfg_.r1 == 2 && cfg_.r2 == 2) --pairs_[static_cast<std::size_t>(r.mid)][static_cast<std::size_t>((r.in.crossbar - 1) * 2 + r.out.crossbar - 1)];
  reqs_.erase(it);
}

std::vector<std::uint64_t> ClosSpaceSim::active_ids() const {
  std::vector<std::uint64_t> out;
  for (const auto& [id, r] : reqs_) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

int ClosSpaceSim::middle_of(std::uint64_t id) const {
  auto it = reqs_.find(id);
  if (it == reqs_.end()) throw SimError(SimErrc::UnknownId, "request " + std::to_string(id) + " not active");
  return it->second.mid + 1;
}

std::pair<Terminal, Terminal> ClosSpaceSim::endpoints(std::uint64_t id) const {
  auto it = reqs_.find(id);
  if (it == reqs_.end()) throw SimError(SimErrc::UnknownId, "request " + std::to_string(id) + " not active");
  return {it->second.in, it->second.out};
}

std::array<int, 2> ClosSpaceSim::benes_unions() const {
  if (cfg_.r1 != 2 || cfg_.r2 != 2) throw SimError(SimErrc::WrongTopology, "Benes sets need r = 2");
  std::array<int, 2> u{0, 0};
  for (const auto& pc : pairs_) {
    if (pc[0] + pc[3] > 0) ++u[0];
    if (pc[1] + pc[2] > 0) ++u[1];
  }
  return u;
}

void ClosSpaceSim::audit() const {
  auto fail = [](const std::string& what) { throw std::logic_error("clos audit: " + what); };
  std::vector<std::int8_t> in_used(in_used_.size(), 0), out_used(out_used_.size(), 0);
  std::vector<std::int32_t> mid_in(mid_in_.size(), 0), mid_out(mid_out_.size(), 0);
  for (const auto& [id, r] : reqs_) {
    if (in_used[in_index(r.in)]++) fail("input terminal used twice");
    if (out_used[out_index(r.out)]++) fail("output terminal used twice");
    if (mid_in[static_cast<std::size_t>(r.mid * cfg_.r1 + r.in.crossbar - 1)]++) fail("input link to a middle crossbar used twice");
    if (mid_out[static_cast<std::size_t>(r.mid * cfg_.r2 + r.out.crossbar - 1)]++) fail("output link from a middle crossbar used twice");
  }
  if (in_used != in_used_ || out_used != out_used_ || mid_in != mid_in_ || mid_out != mid_out_) fail("occupancy out of sync");
  if (cfg_.r1 == 2 && cfg_.r2 == 2) {
    auto u = benes_unions();
    const int n = std::min(cfg_.n1, cfg_.n2);
    if (u[0] > n || u[1] > n) fail("Benes set invariant violated");
  }
}

namespace {

// Middle crossbar state for r = 2: bitmask over pairs 11, 12, 21, 22.
constexpr std::array<std::uint8_t, 7> kMidStates{0, 1, 2, 4, 8, 1 | 8, 2 | 4};

int state_code(std::uint8_t mask) {
  for (int c = 0; c < 7; ++c)
    if (kMidStates[static_cast<std::size_t>(c)] == mask) return c;
  throw std::logic_error("invalid middle crossbar state");
}

std::uint8_t pair_bit(int i, int j) { return static_cast<std::uint8_t>(1u << ((i - 1) * 2 + (j - 1))); }

bool uses_input(std::uint8_t mask, int i) { return mask & (pair_bit(i, 1) | pair_bit(i, 2)); }
bool uses_output(std::uint8_t mask, int j) { return mask & (pair_bit(1, j) | pair_bit(2, j)); }

// Mirrors ClosSpaceSim::benes_admit on the abstract state; -1 when blocked.
int abstract_pick(const std::vector<std::uint8_t>& s, int i, int j) {
  const std::uint8_t diag = pair_bit(3 - i, 3 - j);
  int busy = -1, idle = -1;
  for (int k = 0; k < static_cast<int>(s.size()); ++k) {
    const auto mask = s[static_cast<std::size_t>(k)];
    if (uses_input(mask, i) || uses_output(mask, j)) continue;
    if (mask & diag) return k;
    if (mask && busy < 0) busy = k;
    if (!mask && idle < 0) idle = k;
  }
  return busy >= 0 ? busy : idle;
}

}  // namespace

std::optional<std::vector<BenesEvent>> benes_blocking_search(int n, int m, int max_depth) {
  if (n < 1 || m < 1) throw ArgumentError("n and m must be positive");
  if (m > 20) throw ArgumentError("search space too large");
  auto encode = [](const std::vector<std::uint8_t>& s) {
    std::uint64_t code = 0;
    for (auto mask : s) code = code * 7 + static_cast<std::uint64_t>(state_code(mask));
    return code;
  };
  struct Node {
    std::vector<std::uint8_t> state;
    std::uint64_t parent;
    BenesEvent via;
    int depth;
  };
  std::map<std::uint64_t, Node> seen;
  std::deque<std::uint64_t> queue;
  std::vector<std::uint8_t> start(static_cast<std::size_t>(m), 0);
  const auto root = encode(start);
  seen.emplace(root, Node{start, root, {}, 0});
  queue.push_back(root);

  auto path_to = [&](std::uint64_t code, BenesEvent last) {
    std::vector<BenesEvent> path{last};
    while (code != root) {
      const auto& node = seen.at(code);
      path.push_back(node.via);
      code = node.parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  while (!queue.empty()) {
    const auto code = queue.front();
    queue.pop_front();
    const Node node = seen.at(code);
    if (node.depth >= max_depth) continue;
    std::array<int, 3> in_count{0, 0, 0}, out_count{0, 0, 0};
    for (auto mask : node.state)
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
          if (mask & pair_bit(i, j)) {
            ++in_count[static_cast<std::size_t>(i)];
            ++out_count[static_cast<std::size_t>(j)];
          }
    auto visit = [&](std::vector<std::uint8_t> next, BenesEvent ev) {
      const auto c = encode(next);
      if (seen.count(c)) return;
      seen.emplace(c, Node{std::move(next), code, ev, node.depth + 1});
      queue.push_back(c);
    };
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        if (in_count[static_cast<std::size_t>(i)] >= n || out_count[static_cast<std::size_t>(j)] >= n) continue;
        const int k = abstract_pick(node.state, i, j);
        if (k < 0) return path_to(code, BenesEvent{true, i, j, 0});
        auto next = node.state;
        next[static_cast<std::size_t>(k)] |= pair_bit(i, j);
        visit(std::move(next), BenesEvent{true, i, j, k + 1});
      }
    for (int k = 0; k < m; ++k)
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
          if (node.state[static_cast<std::size_t>(k)] & pair_bit(i, j)) {
            auto next = node.state;
            next[static_cast<std::size_t>(k)] &= static_cast<std::uint8_t>(~pair_bit(i, j));
            visit(std::move(next), BenesEvent{false, i, j, k + 1});
          }
  }
  return std::nullopt;
}

bool replay_benes(int n, int m, const std::vector<BenesEvent>& events) {
  ClosSpaceSim sim(ClosConfig::symmetric(n, m, 2));
  std::uint64_t next_id = 1;
  for (std::size_t e = 0; e < events.size(); ++e) {
    const auto& ev = events[e];
    if (ev.arrive) {
      Terminal in{ev.i, 0}, out{ev.j, 0};
      for (int p = 1; p <= n && !in.port; ++p)
        if (!sim.in_busy({ev.i, p})) in.port = p;
      for (int p = 1; p <= n && !out.port; ++p)
        if (!sim.out_busy({ev.j, p})) out.port = p;
      if (!in.port || !out.port) throw std::logic_error("replay: no free terminal");
      const int mid = sim.benes_admit(next_id++, in, out);
      if (e + 1 == events.size()) return mid == 0;
      if (mid != ev.mid) throw std::logic_error("replay diverged from abstract search");
    } else {
      bool done = false;
      for (auto id : sim.active_ids()) {
        auto [in, out] = sim.endpoints(id);
        if (sim.middle_of(id) != ev.mid || in.crossbar != ev.i || out.crossbar != ev.j) continue;
        sim.release(id);
        done = true;
        break;
      }
      if (!done) throw std::logic_error("replay: departure has no matching request");
    }
    sim.audit();
  }
  return false;
}

ClosMultirateSim::ClosMultirateSim(const ClosConfig& cfg, DwecScheme scheme)
    : cfg_(cfg), dwec_((cfg.validate(), std::move(scheme)), cfg.r1 + cfg.r2) {
  in_load_.assign(static_cast<std::size_t>(cfg.n1 * cfg.r1), Rational(0));
  out_load_.assign(static_cast<std::size_t>(cfg.n2 * cfg.r2), Rational(0));
}

std::size_t ClosMultirateSim::in_index(Terminal t) const {
  if (t.crossbar < 1 || t.crossbar > cfg_.r1 || t.port < 1 || t.port > cfg_.n1)
    throw ArgumentError("input terminal " + t.str() + " out of range");
  return static_cast<std::size_t>((t.crossbar - 1) * cfg_.n1 + (t.port - 1));
}

std::size_t ClosMultirateSim::out_index(Terminal t) const {
  if (t.crossbar < 1 || t.crossbar > cfg_.r2 || t.port < 1 || t.port > cfg_.n2)
    throw ArgumentError("output terminal " + t.str() + " out of range");
  return static_cast<std::size_t>((t.crossbar - 1) * cfg_.n2 + (t.port - 1));
}

Rational ClosMultirateSim::in_residual(Terminal t) const { return 1 - in_load_[in_index(t)]; }
Rational ClosMultirateSim::out_residual(Terminal t) const { return 1 - out_load_[out_index(t)]; }

int ClosMultirateSim::admit(std::uint64_t id, Terminal in, Terminal out, const Rational& rate) {
  if (reqs_.count(id)) throw SimError(SimErrc::DuplicateId, "request " + std::to_string(id) + " already active");
  if (rate <= 0 || rate > 1) throw ArgumentError("rate " + rate.str() + " outside (0, 1]");
  const auto ii = in_index(in);
  const auto oi = out_index(out);
  if (in_load_[ii] + rate > 1 || out_load_[oi] + rate > 1)
    throw SimError(SimErrc::RateExceeded, "rate " + rate.str() + " exceeds residual terminal capacity");
  const int color = dwec_.arrive(id, in.crossbar - 1, cfg_.r1 + out.crossbar - 1, rate);
  if (color + 1 > cfg_.m) {
    dwec_.depart(id);
    return 0;
  }
  in_load_[ii] += rate;
  out_load_[oi] += rate;
  reqs_.emplace(id, Req{in, out, rate, color});
  return color + 1;
}

void ClosMultirateSim::release(std::uint64_t id) {
  auto it = reqs_.find(id);
  if (it == reqs_.end()) throw SimError(SimErrc::UnknownId, "request " + std::to_string(id) + " not active");
  in_load_[in_index(it->second.in)] -= it->second.rate;
  out_load_[out_index(it->second.out)] -= it->second.rate;
  dwec_.depart(id);
  reqs_.erase(it);
}

std::vector<std::uint64_t> ClosMultirateSim::active_ids() const {
  std::vector<std::uint64_t> out;
  for (const auto& [id, r] : reqs_) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

void ClosMultirateSim::audit() const {
  auto fail = [](const std::string& what) { throw std::logic_error("multirate audit: " + what); };
  dwec_.audit();
  std::vector<Rational> in_load(in_load_.size(), Rational(0)), out_load(out_load_.size(), Rational(0));
  std::map<std::pair<int, int>, Rational> in_link, out_link;
  for (const auto& [id, r] : reqs_) {
    in_load[in_index(r.in)] += r.rate;
    out_load[out_index(r.out)] += r.rate;
    in_link[{r.mid, r.in.crossbar}] += r.rate;
    out_link[{r.mid, r.out.crossbar}] += r.rate;
    if (r.mid + 1 > cfg_.m) fail("request on a nonexistent middle crossbar");
  }
  if (in_load != in_load_ || out_load != out_load_) fail("terminal loads out of sync");
  for (const auto& l : in_load)
    if (l > 1) fail("input terminal over capacity");
  for (const auto& l : out_load)
    if (l > 1) fail("output terminal over capacity");
  for (const auto& [k, w] : in_link)
    if (w > 1) fail("input link over capacity");
  for (const auto& [k, w] : out_link)
    if (w > 1) fail("output link over capacity");
  if (dwec_.live().size() != reqs_.size()) fail("coloring and registry disagree");
}

}  // namespace nonblock
