#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nonblock/dary.hpp"

namespace nonblock {

struct SELabel {
  int stage = 1;  // 1-based, in [1, n]
  DaryString label;  // length n - 1

  friend bool operator==(const SELabel&, const SELabel&) = default;
};

// Canonical link identity inside one plane. Kind::Stage is the link leaving
// the stage-`stage` element `label` on output port `port`.
struct LinkId {
  enum class Kind { InputStub, Stage, OutputStub };
  Kind kind = Kind::Stage;
  int stage = 0;
  DaryString label;
  int port = 0;

  friend bool operator==(const LinkId&, const LinkId&) = default;
};

struct Route {
  DaryString input;
  DaryString output;
  std::vector<SELabel> ses;  // n entries, stage 1 first
  std::vector<LinkId> links;  // input stub, n - 1 stage links, output stub
};

// The unique path from input x to output y in one BY^-1(n) plane.
Route route(const DaryString& x, const DaryString& y);

// `stage=<s> se=<label>` per line.
std::string dump(const Route& r);

// Do R(a, b) and R(u, v) share a switching element / an inter-stage link?
bool shares_se(const DaryString& a, const DaryString& b, const DaryString& u, const DaryString& v);
bool shares_link(const DaryString& a, const DaryString& b, const DaryString& u, const DaryString& v);

struct Intersection {
  enum class Kind { None, Single, Multiple };
  Kind kind = Kind::None;
  int stage = 0;  // valid for Single
  int count = 0;  // number of shared switching elements
};

Intersection intersection_stage(const DaryString& a, const DaryString& b, const DaryString& u, const DaryString& v);

// Integer-keyed route geometry used by the simulators. SE keys lie in
// [0, n * d^(n-1)), link keys in [0, (n + 1) * d^n).
class BanyanGeometry {
 public:
  BanyanGeometry(int d, int n);

  const Radix& radix() const { return radix_; }
  std::uint64_t se_key_count() const { return static_cast<std::uint64_t>(radix_.n) * radix_.pow[static_cast<std::size_t>(radix_.n - 1)]; }
  std::uint64_t link_key_count() const { return static_cast<std::uint64_t>(radix_.n + 1) * radix_.count(); }

  // Stage-s element label of R(x, y) as an integer.
  std::uint64_t se_label(std::uint64_t x, std::uint64_t y, int s) const;

  // Appends n keys / n + 1 keys.
  void se_keys(std::uint64_t x, std::uint64_t y, std::vector<std::uint64_t>& out) const;
  void link_keys(std::uint64_t x, std::uint64_t y, std::vector<std::uint64_t>& out) const;

 private:
  Radix radix_;
};

}  // namespace nonblock
