#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "nonblock/dwec.hpp"
#include "nonblock/rational.hpp"

namespace nonblock {

// C(n1, r1, m, n2, r2): r1 input crossbars with n1 ports, m middle
// crossbars, r2 output crossbars with n2 ports.
struct ClosConfig {
  int n1 = 1;
  int r1 = 1;
  int m = 1;
  int n2 = 1;
  int r2 = 1;

  static ClosConfig symmetric(int n, int m, int r) { return {n, r, m, n, r}; }
  void validate() const;
};

// 1-based crossbar and port.
struct Terminal {
  int crossbar = 1;
  int port = 1;

  static Terminal parse(const std::string& text);
  std::string str() const;
  friend bool operator==(const Terminal&, const Terminal&) = default;
};

// Chooses a middle crossbar (1-based) from a non-empty ascending list.
using CrossbarChooser = std::function<int(const std::vector<int>& available)>;

// Unicast space-division Clos network.
class ClosSpaceSim {
 public:
  explicit ClosSpaceSim(const ClosConfig& cfg, std::uint64_t seed = 0, bool random_fit = false);

  const ClosConfig& config() const { return cfg_; }

  // Returns the middle crossbar used, or 0 when blocked (state unchanged).
  int snb_admit(std::uint64_t id, Terminal in, Terminal out, const CrossbarChooser& chooser = {});
  // Reuse rule for r1 = r2 = 2.
  int benes_admit(std::uint64_t id, Terminal in, Terminal out);
  void release(std::uint64_t id);

  // Middle crossbars with no request from input crossbar I and none to
  // output crossbar O (1-based).
  std::vector<int> available(int I, int O) const;
  int unavailable_count(int I, int O) const { return cfg_.m - static_cast<int>(available(I, O).size()); }

  bool in_busy(Terminal t) const;
  bool out_busy(Terminal t) const;
  std::vector<Terminal> free_inputs() const;
  std::vector<Terminal> free_outputs() const;
  std::vector<std::uint64_t> active_ids() const;
  std::size_t active_count() const { return reqs_.size(); }
  int middle_of(std::uint64_t id) const;
  std::pair<Terminal, Terminal> endpoints(std::uint64_t id) const;

  // |M11 u M22| and |M12 u M21| (r = 2 only).
  std::array<int, 2> benes_unions() const;

  void audit() const;

 private:
  struct Req {
    Terminal in;
    Terminal out;
    int mid;  // 0-based
  };
  std::size_t in_index(Terminal t) const;
  std::size_t out_index(Terminal t) const;
  void check_free(std::uint64_t id, Terminal in, Terminal out) const;
  void commit(std::uint64_t id, Terminal in, Terminal out, int mid);

  ClosConfig cfg_;
  bool random_fit_;
  std::mt19937_64 rng_;
  std::vector<std::int8_t> in_used_;
  std::vector<std::int8_t> out_used_;
  std::vector<std::int32_t> mid_in_;   // mid * r1 + I -> 1 if busy
  std::vector<std::int32_t> mid_out_;  // mid * r2 + O -> 1 if busy
  std::vector<std::array<int, 4>> pairs_;  // per mid: count of I_i -> O_j, index (i-1)*2 + (j-1)
  std::unordered_map<std::uint64_t, Req> reqs_;
};

// Abstract events of the Benes reuse-rule search.
struct BenesEvent {
  bool arrive = true;
  int i = 1;    // input crossbar
  int j = 1;    // output crossbar
  int mid = 0;  // departures: 1-based middle crossbar
};

// Breadth-first search over all event sequences of length <= max_depth for
// C(n, m, 2) under the reuse rule. Returns a shortest sequence whose final
// arrival is blocked, or nullopt when none exists within the depth.
std::optional<std::vector<BenesEvent>> benes_blocking_search(int n, int m, int max_depth);

// Replays an abstract sequence on ClosSpaceSim with concrete ports; returns
// true when the last arrival is blocked there too.
bool replay_benes(int n, int m, const std::vector<BenesEvent>& events);

// Multirate unicast admission through DWEC on K_{r1, r2}: each middle
// crossbar is a color, numbered in color creation order.
class ClosMultirateSim {
 public:
  ClosMultirateSim(const ClosConfig& cfg, DwecScheme scheme);

  const ClosConfig& config() const { return cfg_; }
  // Middle crossbar (1-based) or 0 when the coloring needs a crossbar > m.
  int admit(std::uint64_t id, Terminal in, Terminal out, const Rational& rate);
  void release(std::uint64_t id);

  const DwecState& coloring() const { return dwec_; }
  Rational in_residual(Terminal t) const;
  Rational out_residual(Terminal t) const;
  std::vector<std::uint64_t> active_ids() const;
  std::size_t active_count() const { return reqs_.size(); }

  void audit() const;

 private:
  struct Req {
    Terminal in;
    Terminal out;
    Rational rate;
    int mid;
  };
  std::size_t in_index(Terminal t) const;
  std::size_t out_index(Terminal t) const;

  ClosConfig cfg_;
  DwecState dwec_;
  std::vector<Rational> in_load_;
  std::vector<Rational> out_load_;
  std::unordered_map<std::uint64_t, Req> reqs_;
};

}  // namespace nonblock
