#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nonblock/clos.hpp"
#include "nonblock/dwec.hpp"
#include "nonblock/multilog.hpp"
#include "nonblock/rational.hpp"

namespace nonblock {

// Trace files are line oriented; blank lines and lines starting with '#' are
// skipped. Errors carry the 1-based line number.

// "A <id> <input> <output>..." / "D <id>", addresses as n-digit base-d strings.
struct MultilogEvent {
  int line = 0;
  bool arrive = true;
  std::uint64_t id = 0;
  std::uint64_t input = 0;
  std::vector<std::uint64_t> outputs;
};
std::vector<MultilogEvent> parse_multilog_trace(std::istream& in, int d, int n);

// "A <id> <xbar:port> <xbar:port> [rate]" / "D <id>".
struct ClosEvent {
  int line = 0;
  bool arrive = true;
  std::uint64_t id = 0;
  Terminal in;
  Terminal out;
  std::optional<Rational> rate;
};
std::vector<ClosEvent> parse_clos_trace(std::istream& in);

// "A <id> <u> <v> <p/q>" / "D <id>", vertices 0-based.
struct DwecEvent {
  int line = 0;
  bool arrive = true;
  std::uint64_t id = 0;
  int u = 0;
  int v = 0;
  Rational w;
};
std::vector<DwecEvent> parse_dwec_trace(std::istream& in);

// Replays write CSV to `out` and return the number of blocked arrivals.
// Rejected events (busy terminal, unknown id, ...) are reported with the
// error name as status and do not stop the replay.
//   multilog / clos: event,id,window,plane,status
//   dwec:            t,colors_used,opt_lower,W_bar,Delta_bar
std::int64_t replay_multilog(MultilogSim& sim, const std::vector<MultilogEvent>& events, std::ostream& out);
std::int64_t replay_clos(ClosSpaceSim& sim, bool benes, const std::vector<ClosEvent>& events, std::ostream& out);
std::int64_t replay_clos_multirate(ClosMultirateSim& sim, const std::vector<ClosEvent>& events, std::ostream& out);
void replay_dwec(DwecState& state, const std::vector<DwecEvent>& events, std::ostream& out);

}  // namespace nonblock
