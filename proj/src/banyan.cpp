#include "nonblock/banyan.hpp"

#include <algorithm>
#include <sstream>

#include "nonblock/error.hpp"

namespace nonblock {

namespace {

void require_addresses(const DaryString& x, const DaryString& y) {
  if (x.base() != y.base() || x.size() != y.size())
    throw ArgumentError("route endpoints differ in base or length: " + x.str() + ", " + y.str());
  if (x.size() < 2) throw ArgumentError("BY^-1(n) needs n >= 2");
}

// lcs of the input heads and lcp of the output heads.
std::pair<int, int> overlaps(const DaryString& a, const DaryString& b, const DaryString& u, const DaryString& v) {
  require_addresses(a, b);
  require_addresses(u, v);
  require_addresses(a, u);
  return {lcs(a.head(), u.head()), lcp(b.head(), v.head())};
}

}  // namespace

Route route(const DaryString& x, const DaryString& y) {
  require_addresses(x, y);
  const int n = x.size();
  Route r{x, y, {}, {}};
  r.links.push_back({LinkId::Kind::InputStub, 0, x, 0});
  std::vector<std::uint8_t> label(x.digits().begin(), x.digits().end() - 1);
  for (int s = 1; s <= n; ++s) {
    if (s > 1) label[static_cast<std::size_t>(s - 2)] = static_cast<std::uint8_t>(y.digit(s - 2));
    r.ses.push_back({s, DaryString(x.base(), label)});
    if (s < n) r.links.push_back({LinkId::Kind::Stage, s, r.ses.back().label, y.digit(s - 1)});
  }
  r.links.push_back({LinkId::Kind::OutputStub, n + 1, y, 0});
  return r;
}

std::string dump(const Route& r) {
  std::ostringstream os;
  for (const auto& se : r.ses) os << "stage=" << se.stage << " se=" << se.label.str() << '\n';
  return os.str();
}

bool shares_se(const DaryString& a, const DaryString& b, const DaryString& u, const DaryString& v) {
  auto [s, p] = overlaps(a, b, u, v);
  return s + p >= a.size() - 1;
}

bool shares_link(const DaryString& a, const DaryString& b, const DaryString& u, const DaryString& v) {
  auto [s, p] = overlaps(a, b, u, v);
  return s + p >= a.size();
}

Intersection intersection_stage(const DaryString& a, const DaryString& b, const DaryString& u, const DaryString& v) {
  auto [s, p] = overlaps(a, b, u, v);
  const int n = a.size();
  if (s + p < n - 1) return {};
  if (s + p == n - 1) return {Intersection::Kind::Single, p + 1, 1};
  return {Intersection::Kind::Multiple, 0, s + p - n + 2};
}

BanyanGeometry::BanyanGeometry(int d, int n) : radix_(d, n) {
  if (n < 2) throw ArgumentError("BY^-1(n) needs n >= 2");
}

std::uint64_t BanyanGeometry::se_label(std::uint64_t x, std::uint64_t y, int s) const {
  const auto& p = radix_.pow;
  const std::uint64_t xh = x / p[1];
  const std::uint64_t yh = y / p[1];
  const std::uint64_t low = p[static_cast<std::size_t>(radix_.n - s)];
  return (yh / low) * low + xh % low;
}

void BanyanGeometry::se_keys(std::uint64_t x, std::uint64_t y, std::vector<std::uint64_t>& out) const {
  const std::uint64_t per_stage = radix_.pow[static_cast<std::size_t>(radix_.n - 1)];
  for (int s = 1; s <= radix_.n; ++s)
    out.push_back(static_cast<std::uint64_t>(s - 1) * per_stage + se_label(x, y, s));
}

void BanyanGeometry::link_keys(std::uint64_t x, std::uint64_t y, std::vector<std::uint64_t>& out) const {
  const std::uint64_t N = radix_.count();
  const auto d = static_cast<std::uint64_t>(radix_.d);
  out.push_back(x);
  for (int s = 1; s < radix_.n; ++s)
    out.push_back(N * static_cast<std::uint64_t>(s) + se_label(x, y, s) * d + static_cast<std::uint64_t>(radix_.digit(y, s)));
  out.push_back(N * static_cast<std::uint64_t>(radix_.n) + y);
}

}  // namespace nonblock
