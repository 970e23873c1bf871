#include "nonblock/multilog.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "nonblock/error.hpp"

namespace nonblock {

const char* to_string(Mode mode) { return mode == Mode::LinkBlocking ? "link" : "crosstalk"; }

bool AdmitResult::blocked() const {
  return std::any_of(windows.begin(), windows.end(), [](const WindowOutcome& w) { return w.blocked(); });
}

MultilogSim::MultilogSim(const MultilogConfig& cfg) : cfg_(cfg), geo_(cfg.d, cfg.n), rng_(cfg.policy.seed) {
  if (cfg.m < 1) throw ArgumentError("plane count m must be >= 1");
  if (cfg.t < 0 || cfg.t > cfg.n) throw ArgumentError("window exponent t outside [0, n]");
  const auto N = geo_.radix().count();
  if (cfg.f < 1 || static_cast<std::uint64_t>(cfg.f) > N) throw ArgumentError("fanout f outside [1, d^n]");
  key_count_ = cfg.mode == Mode::LinkBlocking ? geo_.link_key_count() : geo_.se_key_count();
  owner_.assign(key_count_ * static_cast<std::uint64_t>(cfg.m), -1);
  refs_.assign(owner_.size(), 0);
  input_owner_.assign(N, -1);
  output_owner_.assign(N, -1);
  plane_load_.assign(static_cast<std::size_t>(cfg.m), 0);
}

void MultilogSim::keys_for(std::uint64_t x, std::uint64_t y, std::vector<std::uint64_t>& out) const {
  if (cfg_.mode == Mode::LinkBlocking)
    geo_.link_keys(x, y, out);
  else
    geo_.se_keys(x, y, out);
}

bool MultilogSim::plane_free_for(int plane, int slot, std::uint64_t input, std::span<const std::uint64_t> outputs) const {
  const std::uint64_t base = static_cast<std::uint64_t>(plane) * key_count_;
  for (auto y : outputs) {
    scratch_.clear();
    keys_for(input, y, scratch_);
    for (auto key : scratch_) {
      const auto o = owner_[base + key];
      if (o >= 0 && o != slot) return false;
    }
  }
  return true;
}

bool MultilogSim::branches_conflict(std::uint64_t a, std::uint64_t b, std::uint64_t u, std::uint64_t v) const {
  const auto& r = geo_.radix();
  const int overlap = r.head_lcs(a, u) + r.head_lcp(b, v);
  if (cfg_.mode == Mode::CrosstalkFree) return overlap >= r.n - 1;
  return overlap >= r.n || a == u || b == v;
}

void MultilogSim::occupy(int plane, int slot, std::uint64_t input, std::span<const std::uint64_t> outputs) {
  const std::uint64_t base = static_cast<std::uint64_t>(plane) * key_count_;
  for (auto y : outputs) {
    scratch_.clear();
    keys_for(input, y, scratch_);
    for (auto key : scratch_) {
      owner_[base + key] = slot;
      ++refs_[base + key];
    }
  }
}

int MultilogSim::choose(std::uint64_t window, const std::vector<int>& available, const PlaneChooser& chooser) {
  if (chooser) {
    int p = chooser(window, available);
    if (!std::binary_search(available.begin(), available.end(), p))
      throw std::logic_error("plane chooser returned an unavailable plane");
    return p;
  }
  switch (cfg_.policy.kind) {
    case PlanePolicy::Kind::FirstFit:
      return available.front();
    case PlanePolicy::Kind::BestFit: {
      int best = available.front();
      for (int p : available)
        if (plane_load_[static_cast<std::size_t>(p - 1)] > plane_load_[static_cast<std::size_t>(best - 1)]) best = p;
      return best;
    }
    case PlanePolicy::Kind::Random: {
      std::uniform_int_distribution<std::size_t> pick(0, available.size() - 1);
      return available[pick(rng_)];
    }
  }
  return available.front();
}

AdmitResult MultilogSim::admit(std::uint64_t id, std::uint64_t input, std::span<const std::uint64_t> outputs,
                               const PlaneChooser& chooser) {
  const auto& r = geo_.radix();
  if (ids_.count(id)) throw SimError(SimErrc::DuplicateId, "request " + std::to_string(id) + " already active");
  if (outputs.empty()) throw ArgumentError("request without outputs");
  if (static_cast<std::int64_t>(outputs.size()) > cfg_.f)
    throw SimError(SimErrc::FanoutExceeded, std::to_string(outputs.size()) + " outputs > f=" + std::to_string(cfg_.f));
  if (input >= r.count()) throw ArgumentError("input address out of range");
  std::vector<std::uint64_t> outs(outputs.begin(), outputs.end());
  std::sort(outs.begin(), outs.end());
  if (std::adjacent_find(outs.begin(), outs.end()) != outs.end()) throw ArgumentError("duplicate output in request");
  for (auto v : outs) {
    if (v >= r.count()) throw ArgumentError("output address out of range");
    if (output_owner_[v] >= 0) throw SimError(SimErrc::OutputBusy, "output " + std::to_string(v) + " already connected");
  }
  if (input_owner_[input] >= 0) throw SimError(SimErrc::InputBusy, "input " + std::to_string(input) + " already active");

  int slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
  } else {
    slot = static_cast<int>(slots_.size());
    slots_.emplace_back();
  }
  Request& req = slots_[static_cast<std::size_t>(slot)];
  req = Request{id, input, {}, true};
  ids_.emplace(id, slot);
  input_owner_[input] = slot;

  AdmitResult result{id, {}};
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_window;
  for (auto v : outs) by_window[r.window(v, cfg_.t)].push_back(v);
  std::vector<int> available;
  for (auto& [w, group] : by_window) {
    available.clear();
    for (int p = 0; p < cfg_.m; ++p)
      if (plane_free_for(p, slot, input, group)) available.push_back(p + 1);
    WindowOutcome outcome{w, group, 0};
    if (!available.empty()) {
      const int plane = choose(w, available, chooser);
      occupy(plane - 1, slot, input, group);
      ++plane_load_[static_cast<std::size_t>(plane - 1)];
      for (auto v : group) output_owner_[v] = slot;
      slots_[static_cast<std::size_t>(slot)].subs.push_back({w, plane - 1, group});
      outcome.plane = plane;
    }
    result.windows.push_back(std::move(outcome));
  }
  return result;
}

AdmitResult MultilogSim::admit(std::uint64_t id, const DaryString& input, std::span<const DaryString> outputs) {
  const auto& r = geo_.radix();
  auto check = [&](const DaryString& s) {
    if (s.base() != r.d || s.size() != r.n) throw ArgumentError("address " + s.str() + " has wrong base or length");
  };
  check(input);
  std::vector<std::uint64_t> outs;
  for (const auto& v : outputs) {
    check(v);
    outs.push_back(v.index());
  }
  return admit(id, input.index(), outs);
}

void MultilogSim::release(std::uint64_t id) {
  auto it = ids_.find(id);
  if (it == ids_.end()) throw SimError(SimErrc::UnknownId, "request " + std::to_string(id) + " not active");
  const int slot = it->second;
  Request& req = slots_[static_cast<std::size_t>(slot)];
  for (const auto& sub : req.subs) {
    const std::uint64_t base = static_cast<std::uint64_t>(sub.plane) * key_count_;
    for (auto y : sub.outputs) {
      scratch_.clear();
      keys_for(req.input, y, scratch_);
      for (auto key : scratch_)
        if (--refs_[base + key] == 0) owner_[base + key] = -1;
      output_owner_[y] = -1;
    }
    --plane_load_[static_cast<std::size_t>(sub.plane)];
  }
  input_owner_[req.input] = -1;
  req = Request{};
  free_slots_.push_back(slot);
  ids_.erase(it);
}

std::vector<int> MultilogSim::blocking_planes(std::uint64_t input, std::span<const std::uint64_t> outputs) const {
  std::vector<int> out;
  for (int p = 0; p < cfg_.m; ++p)
    if (!plane_free_for(p, -1, input, outputs)) out.push_back(p + 1);
  return out;
}

std::vector<BlockingWitness> MultilogSim::blocking_witnesses(std::uint64_t input, std::span<const std::uint64_t> outputs) const {
  std::vector<BlockingWitness> found(static_cast<std::size_t>(cfg_.m));
  std::vector<bool> hit(static_cast<std::size_t>(cfg_.m), false);
  for (auto b : outputs) {
    for (const auto& req : slots_) {
      if (!req.live) continue;
      for (const auto& sub : req.subs) {
        if (hit[static_cast<std::size_t>(sub.plane)]) continue;
        for (auto v : sub.outputs) {
          if (branches_conflict(input, b, req.input, v)) {
            hit[static_cast<std::size_t>(sub.plane)] = true;
            found[static_cast<std::size_t>(sub.plane)] = {sub.plane + 1, req.input, v, b};
            break;
          }
        }
      }
    }
  }
  std::vector<BlockingWitness> out;
  for (int p = 0; p < cfg_.m; ++p)
    if (hit[static_cast<std::size_t>(p)]) out.push_back(found[static_cast<std::size_t>(p)]);
  return out;
}

std::vector<std::uint64_t> MultilogSim::active_ids() const {
  std::vector<std::uint64_t> out;
  for (const auto& [id, slot] : ids_) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WindowOutcome> MultilogSim::placement(std::uint64_t id) const {
  auto it = ids_.find(id);
  if (it == ids_.end()) throw SimError(SimErrc::UnknownId, "request " + std::to_string(id) + " not active");
  std::vector<WindowOutcome> out;
  for (const auto& sub : slots_[static_cast<std::size_t>(it->second)].subs) out.push_back({sub.window, sub.outputs, sub.plane + 1});
  return out;
}

std::uint64_t MultilogSim::input_of(std::uint64_t id) const {
  auto it = ids_.find(id);
  if (it == ids_.end()) throw SimError(SimErrc::UnknownId, "request " + std::to_string(id) + " not active");
  return slots_[static_cast<std::size_t>(it->second)].input;
}

void MultilogSim::audit() const {
  const auto& r = geo_.radix();
  auto fail = [](const std::string& what) { throw std::logic_error("multilog audit: " + what); };
  std::vector<std::int32_t> owner(owner_.size(), -1);
  std::vector<std::uint32_t> refs(owner_.size(), 0);
  std::vector<std::int32_t> in_owner(input_owner_.size(), -1);
  std::vector<std::int32_t> out_owner(output_owner_.size(), -1);
  std::vector<int> load(plane_load_.size(), 0);
  std::vector<std::uint64_t> keys;
  std::size_t live = 0;
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    const auto& req = slots_[s];
    if (!req.live) continue;
    ++live;
    const int slot = static_cast<int>(s);
    auto it = ids_.find(req.id);
    if (it == ids_.end() || it->second != slot) fail("registry mismatch for request " + std::to_string(req.id));
    if (in_owner[req.input] >= 0) fail("two requests on input " + std::to_string(req.input));
    in_owner[req.input] = slot;
    std::int64_t fanout = 0;
    std::vector<std::uint64_t> windows;
    for (const auto& sub : req.subs) {
      windows.push_back(sub.window);
      ++load[static_cast<std::size_t>(sub.plane)];
      const std::uint64_t base = static_cast<std::uint64_t>(sub.plane) * key_count_;
      for (auto v : sub.outputs) {
        ++fanout;
        if (r.window(v, cfg_.t) != sub.window) fail("branch outside its window subrequest");
        if (out_owner[v] >= 0) fail("output " + std::to_string(v) + " owned twice");
        out_owner[v] = slot;
        keys.clear();
        keys_for(req.input, v, keys);
        for (auto k : keys) {
          if (owner[base + k] >= 0 && owner[base + k] != slot) fail("two requests share a resource on one plane");
          owner[base + k] = slot;
          ++refs[base + k];
        }
      }
    }
    std::sort(windows.begin(), windows.end());
    if (std::adjacent_find(windows.begin(), windows.end()) != windows.end()) fail("window split across planes");
    if (fanout > cfg_.f) fail("fanout above f");
  }
  if (live != ids_.size()) fail("registry size mismatch");
  if (owner != owner_) fail("occupancy map out of sync");
  for (std::size_t i = 0; i < refs.size(); ++i)
    if (refs[i] != refs_[i]) fail("reference counts out of sync");
  if (in_owner != input_owner_ || out_owner != output_owner_) fail("terminal ownership out of sync");
  if (load != plane_load_) fail("plane loads out of sync");
}

}  // namespace nonblock
