#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nonblock/banyan.hpp"
#include "nonblock/dary.hpp"

namespace nonblock {

enum class Mode { LinkBlocking, CrosstalkFree };

const char* to_string(Mode mode);

struct PlanePolicy {
  enum class Kind { FirstFit, BestFit, Random };
  Kind kind = Kind::FirstFit;
  std::uint64_t seed = 0;

  static PlanePolicy first_fit() { return {}; }
  static PlanePolicy best_fit() { return {Kind::BestFit, 0}; }
  static PlanePolicy random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

struct MultilogConfig {
  int d = 2;
  int n = 3;
  int m = 1;
  int t = 0;
  std::int64_t f = 1;
  Mode mode = Mode::LinkBlocking;
  PlanePolicy policy;
};

struct WindowOutcome {
  std::uint64_t window = 0;
  std::vector<std::uint64_t> outputs;
  int plane = 0;  // 1-based; 0 when blocked
  bool blocked() const { return plane == 0; }
};

struct AdmitResult {
  std::uint64_t id = 0;
  std::vector<WindowOutcome> windows;  // ascending window index
  bool blocked() const;
};

// One existing branch (u, v) on `plane` that conflicts with the new branch
// (a, b).
struct BlockingWitness {
  int plane = 0;
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  std::uint64_t b = 0;
};

// Picks a plane for one window subrequest from the available planes
// (1-based, ascending, never empty). Overrides the configured policy.
using PlaneChooser = std::function<int(std::uint64_t window, const std::vector<int>& available)>;

// log_d(N, 0, m) under the window algorithm. Addresses are integer indices
// in [0, d^n); DaryString overloads convert.
class MultilogSim {
 public:
  explicit MultilogSim(const MultilogConfig& cfg);

  const MultilogConfig& config() const { return cfg_; }
  const Radix& radix() const { return geo_.radix(); }

  AdmitResult admit(std::uint64_t id, std::uint64_t input, std::span<const std::uint64_t> outputs,
                    const PlaneChooser& chooser = {});
  AdmitResult admit(std::uint64_t id, const DaryString& input, std::span<const DaryString> outputs);
  void release(std::uint64_t id);

  // Planes (1-based, ascending) on which some branch of (input, outputs)
  // conflicts with an existing route. Outputs must share one window.
  std::vector<int> blocking_planes(std::uint64_t input, std::span<const std::uint64_t> outputs) const;
  // Same set, found by pairwise route comparison; one witness per blocking
  // plane, the first conflicting pair in (branch, existing route) order.
  std::vector<BlockingWitness> blocking_witnesses(std::uint64_t input, std::span<const std::uint64_t> outputs) const;

  bool input_busy(std::uint64_t u) const { return input_owner_[u] >= 0; }
  bool output_busy(std::uint64_t v) const { return output_owner_[v] >= 0; }
  bool active(std::uint64_t id) const { return ids_.count(id) != 0; }
  std::size_t active_count() const { return ids_.size(); }
  std::vector<std::uint64_t> active_ids() const;
  // Output count and window subrequests (window, plane, outputs) of a request.
  std::vector<WindowOutcome> placement(std::uint64_t id) const;
  std::uint64_t input_of(std::uint64_t id) const;
  bool empty() const { return ids_.empty(); }

  // Full consistency check; throws std::logic_error describing the first
  // violated invariant.
  void audit() const;

 private:
  struct Sub {
    std::uint64_t window;
    int plane;  // 0-based
    std::vector<std::uint64_t> outputs;
  };
  struct Request {
    std::uint64_t id;
    std::uint64_t input;
    std::vector<Sub> subs;
    bool live = false;
  };

  void keys_for(std::uint64_t x, std::uint64_t y, std::vector<std::uint64_t>& out) const;
  bool plane_free_for(int plane, int slot, std::uint64_t input, std::span<const std::uint64_t> outputs) const;
  bool branches_conflict(std::uint64_t a, std::uint64_t b, std::uint64_t u, std::uint64_t v) const;
  void occupy(int plane, int slot, std::uint64_t input, std::span<const std::uint64_t> outputs);
  int choose(std::uint64_t window, const std::vector<int>& available, const PlaneChooser& chooser);

  MultilogConfig cfg_;
  BanyanGeometry geo_;
  std::uint64_t key_count_;
  std::vector<std::int32_t> owner_;    // plane * key_count_ + key -> slot or -1
  std::vector<std::uint16_t> refs_;    // branch references of the owner
  std::vector<std::int32_t> input_owner_;
  std::vector<std::int32_t> output_owner_;
  std::vector<int> plane_load_;        // window subrequests per plane
  std::vector<Request> slots_;
  std::vector<int> free_slots_;
  std::unordered_map<std::uint64_t, int> ids_;
  std::mt19937_64 rng_;
  mutable std::vector<std::uint64_t> scratch_;
};

}  // namespace nonblock
