#include "nonblock/trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "nonblock/dary.hpp"
#include "nonblock/error.hpp"

namespace nonblock {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    std::istringstream ss(text);
    std::vector<std::string> toks;
    for (std::string tok; ss >> tok;) toks.push_back(tok);
    if (toks.empty() || toks.front()[0] == '#') continue;
    out.push_back({number, std::move(toks)});
  }
  return out;
}

std::uint64_t parse_id(const Line& l, const std::string& tok) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw TraceParseError(l.number, "bad id '" + tok + "'");
  }
}

int parse_int(const Line& l, const std::string& tok, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw TraceParseError(l.number, std::string("bad ") + what + " '" + tok + "'");
  }
}

// Validates the event tag and, for departures, the arity.
bool arrival(const Line& l, std::size_t min_arrive, std::size_t max_arrive) {
  const auto& tag = l.tokens[0];
  if (tag == "D") {
    if (l.tokens.size() != 2) throw TraceParseError(l.number, "departure takes exactly one id");
    return false;
  }
  if (tag != "A") throw TraceParseError(l.number, "unknown event '" + tag + "'");
  if (l.tokens.size() < min_arrive || l.tokens.size() > max_arrive)
    throw TraceParseError(l.number, "wrong number of fields for an arrival");
  return true;
}

template <class F>
auto rethrow_at(int line, F&& f) {
  try {
    return f();
  } catch (const TraceParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw TraceParseError(line, e.what());
  }
}

}  // namespace

std::vector<MultilogEvent> parse_multilog_trace(std::istream& in, int d, int n) {
  std::vector<MultilogEvent> out;
  for (const auto& l : tokenize(in)) {
    MultilogEvent e;
    e.line = l.number;
    e.arrive = arrival(l, 4, static_cast<std::size_t>(-1));
    e.id = parse_id(l, l.tokens[1]);
    if (e.arrive) {
      auto addr = [&](const std::string& tok) {
        return rethrow_at(l.number, [&] {
          auto s = DaryString::parse(d, tok);
          if (s.size() != n) throw ArgumentError("address '" + tok + "' must have " + std::to_string(n) + " digits");
          return s.index();
        });
      };
      e.input = addr(l.tokens[2]);
      for (std::size_t i = 3; i < l.tokens.size(); ++i) e.outputs.push_back(addr(l.tokens[i]));
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ClosEvent> parse_clos_trace(std::istream& in) {
  std::vector<ClosEvent> out;
  for (const auto& l : tokenize(in)) {
    ClosEvent e;
    e.line = l.number;
    e.arrive = arrival(l, 4, 5);
    e.id = parse_id(l, l.tokens[1]);
    if (e.arrive) {
      e.in = rethrow_at(l.number, [&] { return Terminal::parse(l.tokens[2]); });
      e.out = rethrow_at(l.number, [&] { return Terminal::parse(l.tokens[3]); });
      if (l.tokens.size() == 5) e.rate = rethrow_at(l.number, [&] { return Rational::parse(l.tokens[4]); });
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<DwecEvent> parse_dwec_trace(std::istream& in) {
  std::vector<DwecEvent> out;
  for (const auto& l : tokenize(in)) {
    DwecEvent e;
    e.line = l.number;
    e.arrive = arrival(l, 5, 5);
    e.id = parse_id(l, l.tokens[1]);
    if (e.arrive) {
      e.u = parse_int(l, l.tokens[2], "vertex");
      e.v = parse_int(l, l.tokens[3], "vertex");
      e.w = rethrow_at(l.number, [&] { return Rational::parse(l.tokens[4]); });
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::int64_t replay_multilog(MultilogSim& sim, const std::vector<MultilogEvent>& events, std::ostream& out) {
  out << "event,id,window,plane,status\n";
  std::int64_t blocked = 0;
  for (const auto& e : events) {
    try {
      if (!e.arrive) {
        sim.release(e.id);
        out << "D," << e.id << ",,,released\n";
        continue;
      }
      const auto res = sim.admit(e.id, e.input, e.outputs);
      for (const auto& w : res.windows)
        out << "A," << e.id << ',' << w.window << ',' << w.plane << ',' << (w.blocked() ? "blocked" : "routed") << '\n';
      if (res.blocked()) ++blocked;
    } catch (const SimError& err) {
      out << (e.arrive ? "A," : "D,") << e.id << ",,," << to_string(err.code()) << '\n';
    } catch (const ArgumentError&) {
      out << (e.arrive ? "A," : "D,") << e.id << ",,,invalid\n";
    }
  }
  return blocked;
}

std::int64_t replay_clos(ClosSpaceSim& sim, bool benes, const std::vector<ClosEvent>& events, std::ostream& out) {
  out << "event,id,window,plane,status\n";
  std::int64_t blocked = 0;
  for (const auto& e : events) {
    try {
      if (!e.arrive) {
        sim.release(e.id);
        out << "D," << e.id << ",,,released\n";
        continue;
      }
      const int mid = benes ? sim.benes_admit(e.id, e.in, e.out) : sim.snb_admit(e.id, e.in, e.out);
      if (mid == 0) ++blocked;
      out << "A," << e.id << ",," << mid << ',' << (mid == 0 ? "blocked" : "routed") << '\n';
    } catch (const SimError& err) {
      out << (e.arrive ? "A," : "D,") << e.id << ",,," << to_string(err.code()) << '\n';
    } catch (const ArgumentError&) {
      out << (e.arrive ? "A," : "D,") << e.id << ",,,invalid\n";
    }
  }
  return blocked;
}

std::int64_t replay_clos_multirate(ClosMultirateSim& sim, const std::vector<ClosEvent>& events, std::ostream& out) {
  out << "event,id,window,plane,status\n";
  std::int64_t blocked = 0;
  for (const auto& e : events) {
    try {
      if (!e.arrive) {
        sim.release(e.id);
        out << "D," << e.id << ",,,released\n";
        continue;
      }
      const int mid = sim.admit(e.id, e.in, e.out, e.rate.value_or(Rational(1)));
      if (mid == 0) ++blocked;
      out << "A," << e.id << ",," << mid << ',' << (mid == 0 ? "blocked" : "routed") << '\n';
    } catch (const SimError& err) {
      out << (e.arrive ? "A," : "D,") << e.id << ",,," << to_string(err.code()) << '\n';
    } catch (const ArgumentError&) {
      out << (e.arrive ? "A," : "D,") << e.id << ",,,invalid\n";
    }
  }
  return blocked;
}

void replay_dwec(DwecState& state, const std::vector<DwecEvent>& events, std::ostream& out) {
  out << "t,colors_used,opt_lower,W_bar,Delta_bar\n";
  int t = 0;
  for (const auto& e : events) {
    try {
      if (e.arrive)
        state.arrive(e.id, e.u, e.v, e.w);
      else
        state.depart(e.id);
    } catch (const SimError& err) {
      throw TraceParseError(e.line, err.what());
    } catch (const ArgumentError& err) {
      throw TraceParseError(e.line, err.what());
    }
    out << ++t << ',' << state.colors_used() << ',' << state.opt_lower() << ',' << state.w_bar().str() << ','
        << state.delta_bar() << '\n';
  }
}

}  // namespace nonblock
