#pragma once

// Reference implementations used only by tests. Each one recomputes a
// library quantity from first principles (explicit wiring, brute-force
// enumeration) without calling the code under test.

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "nonblock/dary.hpp"

namespace oracle {

using Label = std::vector<int>;

struct WiredRoute {
  std::vector<std::pair<int, Label>> ses;                  // (stage, label)
  std::vector<std::pair<Label, Label>> interstage;         // (from label, to label) per stage gap
};

inline std::vector<int> digits(const nonblock::DaryString& s) {
  return {s.digits().begin(), s.digits().end()};
}

// Walks the plane wiring: stage-1 element is x_{1..n-1}, element z at stage i
// feeds z with digit i replaced by any symbol, the last element is y_{1..n-1}.
// Depth-first search over that graph; the path is unique.
inline WiredRoute wired_route(const nonblock::DaryString& x, const nonblock::DaryString& y) {
  const int n = x.size();
  const int d = x.base();
  const auto xd = digits(x), yd = digits(y);
  const Label start(xd.begin(), xd.end() - 1);
  const Label goal(yd.begin(), yd.end() - 1);
  std::vector<Label> path{start};
  std::vector<Label> found;
  auto dfs = [&](auto&& self, int stage) -> void {
    if (stage == n) {
      if (path.back() == goal) found = path;
      return;
    }
    for (int sym = 0; sym < d; ++sym) {
      Label next = path.back();
      next[static_cast<std::size_t>(stage - 1)] = sym;
      path.push_back(next);
      self(self, stage + 1);
      path.pop_back();
    }
  };
  dfs(dfs, 1);
  WiredRoute r;
  for (std::size_t i = 0; i < found.size(); ++i) {
    r.ses.push_back({static_cast<int>(i) + 1, found[i]});
    if (i + 1 < found.size()) r.interstage.push_back({found[i], found[i + 1]});
  }
  return r;
}

inline bool share_se(const WiredRoute& a, const WiredRoute& b) {
  for (const auto& s : a.ses)
    if (std::find(b.ses.begin(), b.ses.end(), s) != b.ses.end()) return true;
  return false;
}

inline bool share_link(const WiredRoute& a, const WiredRoute& b) {
  for (std::size_t i = 0; i < a.interstage.size(); ++i)
    if (a.interstage[i] == b.interstage[i]) return true;
  return false;
}

}  // namespace oracle
