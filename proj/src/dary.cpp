#include "nonblock/dary.hpp"

#include <algorithm>

#include "nonblock/error.hpp"

namespace nonblock {

namespace {

void require_same_shape(const DaryString& u, const DaryString& v) {
  if (u.base() != v.base()) throw ArgumentError("base mismatch: " + u.str() + " vs " + v.str());
  if (u.size() != v.size()) throw ArgumentError("length mismatch: " + u.str() + " vs " + v.str());
}

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

char digit_char(int v) { return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10)); }

}  // namespace

DaryString::DaryString(int base, std::vector<std::uint8_t> digits) : base_(base), digits_(std::move(digits)) {
  if (base < 2 || base > 36) throw ArgumentError("base must be in [2, 36]");
  for (auto dg : digits_)
    if (dg >= base) throw ArgumentError("digit " + std::to_string(dg) + " out of range for base " + std::to_string(base));
}

DaryString DaryString::parse(int base, std::string_view text) {
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char c : text) {
    int v = digit_value(c);
    if (v < 0 || v >= base) throw ArgumentError("invalid digit '" + std::string(1, c) + "' for base " + std::to_string(base));
    digits.push_back(static_cast<std::uint8_t>(v));
  }
  return DaryString(base, std::move(digits));
}

DaryString DaryString::from_index(int base, int length, std::uint64_t index) {
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
  }
  if (index != 0) throw ArgumentError("index does not fit in the given length");
  return DaryString(base, std::move(digits));
}

DaryString DaryString::zeros(int base, int length) {
  return DaryString(base, std::vector<std::uint8_t>(static_cast<std::size_t>(length), 0));
}

std::uint64_t DaryString::index() const {
  std::uint64_t v = 0;
  for (auto dg : digits_) v = v * static_cast<std::uint64_t>(base_) + dg;
  return v;
}

DaryString DaryString::substr(int pos, int len) const {
  if (pos < 0 || len < 0 || pos + len > size()) throw ArgumentError("substring out of range");
  return DaryString(base_, std::vector<std::uint8_t>(digits_.begin() + pos, digits_.begin() + pos + len));
}

std::string DaryString::str() const {
  std::string s;
  s.reserve(digits_.size());
  for (auto dg : digits_) s.push_back(digit_char(dg));
  return s;
}

int lcp(const DaryString& u, const DaryString& v) {
  require_same_shape(u, v);
  int l = 0;
  while (l < u.size() && u.digit(l) == v.digit(l)) ++l;
  return l;
}

int lcs(const DaryString& u, const DaryString& v) {
  require_same_shape(u, v);
  int l = 0;
  const int n = u.size();
  while (l < n && u.digit(n - 1 - l) == v.digit(n - 1 - l)) ++l;
  return l;
}

std::uint64_t window_index(const DaryString& v, int t) {
  if (t < 0 || t > v.size()) throw ArgumentError("window exponent t=" + std::to_string(t) + " outside [0, n]");
  std::uint64_t w = 0;
  for (int i = 0; i < v.size() - t; ++i) w = w * static_cast<std::uint64_t>(v.base()) + v.digit(i);
  return w;
}

Radix::Radix(int base, int length) : d(base), n(length) {
  if (base < 2) throw ArgumentError("base must be >= 2");
  if (length < 1) throw ArgumentError("length must be >= 1");
  pow.resize(static_cast<std::size_t>(length) + 1);
  pow[0] = 1;
  for (int i = 1; i <= length; ++i) {
    if (pow[static_cast<std::size_t>(i - 1)] > (1ull << 40) / static_cast<std::uint64_t>(base))
      throw ArgumentError("network too large");
    pow[static_cast<std::size_t>(i)] = pow[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(base);
  }
}

int Radix::head_lcp(std::uint64_t x, std::uint64_t y) const {
  int l = 0;
  while (l < n - 1 && digit(x, l + 1) == digit(y, l + 1)) ++l;
  return l;
}

int Radix::head_lcs(std::uint64_t x, std::uint64_t y) const {
  int l = 0;
  while (l < n - 1 && digit(x, n - 1 - l) == digit(y, n - 1 - l)) ++l;
  return l;
}

AddressSets::AddressSets(const DaryString& a, std::span<const DaryString> outputs, int t) : t_(t) {
  if (outputs.empty()) throw ArgumentError("request needs at least one output");
  const int n = a.size();
  const int d = a.base();
  for (const auto& b : outputs) require_same_shape(a, b);
  if (t < 0 || t > n) throw ArgumentError("window exponent t=" + std::to_string(t) + " outside [0, n]");
  radix_ = Radix(d, n);
  a_ = a.index();
  for (const auto& b : outputs) b_.push_back(b.index());
  std::sort(b_.begin(), b_.end());
  if (std::adjacent_find(b_.begin(), b_.end()) != b_.end()) throw ArgumentError("duplicate output in request");
  home_window_ = radix_.window(b_.front(), t);
  for (auto b : b_)
    if (radix_.window(b, t) != home_window_) throw ArgumentError("request outputs span several windows");
  window_count_ = radix_.pow[static_cast<std::size_t>(n - t)];

  const std::uint64_t N = radix_.count();
  i_.assign(N, -1);
  a_sets_.assign(static_cast<std::size_t>(n), {});
  for (std::uint64_t u = 0; u < N; ++u) {
    if (u == a_) continue;
    int i = radix_.head_lcs(u, a_);
    i_[u] = static_cast<std::int8_t>(i);
    a_sets_[static_cast<std::size_t>(i)].push_back(u);
  }

  j_.assign(N, -1);
  jmask_.assign(N, 0);
  b_sets_.assign(static_cast<std::size_t>(n), {});
  for (std::uint64_t v = 0; v < N; ++v) {
    if (std::binary_search(b_.begin(), b_.end(), v)) continue;
    std::uint64_t mask = 0;
    int best = -1;
    for (auto b : b_) {
      int j = radix_.head_lcp(v, b);
      mask |= 1ull << j;
      best = std::max(best, j);
    }
    jmask_[v] = mask;
    j_[v] = static_cast<std::int8_t>(best);
    for (int j = 0; j < n; ++j)
      if (mask >> j & 1) b_sets_[static_cast<std::size_t>(j)].push_back(v);
    if (radix_.window(v, t) == home_window_) home_rest_.push_back(v);
  }

  jw_.assign(window_count_, -1);
  for (std::uint64_t w = 0; w < window_count_; ++w) {
    if (w == home_window_) continue;
    other_windows_.push_back(w);
    // Every output of a foreign window has the same head-prefix overlap with
    // each member of B; take the window's first output as representative.
    jw_[w] = j_[w * radix_.pow[static_cast<std::size_t>(t)]];
  }
}

std::optional<int> AddressSets::i_of(std::uint64_t u) const {
  if (u >= i_.size()) throw ArgumentError("input index out of range");
  if (i_[u] < 0) return std::nullopt;
  return i_[u];
}

std::optional<int> AddressSets::j_of(std::uint64_t v) const {
  if (v >= j_.size()) throw ArgumentError("output index out of range");
  if (j_[v] < 0) return std::nullopt;
  return j_[v];
}

std::optional<int> AddressSets::j_of_window(std::uint64_t w) const {
  if (w >= jw_.size()) throw ArgumentError("window index out of range");
  if (jw_[w] < 0) return std::nullopt;
  return jw_[w];
}

bool AddressSets::in_b_j(std::uint64_t v, int j) const { return (jmask_.at(v) >> j) & 1; }

std::vector<DaryString> AddressSets::A_strings(int i) const {
  std::vector<DaryString> out;
  for (auto u : A(i)) out.push_back(DaryString::from_index(radix_.d, radix_.n, u));
  return out;
}

std::vector<DaryString> AddressSets::B_strings(int j) const {
  std::vector<DaryString> out;
  for (auto v : B(j)) out.push_back(DaryString::from_index(radix_.d, radix_.n, v));
  return out;
}

std::uint64_t AddressSets::union_b_tail(int q) const {
  const int n = radix_.n;
  if (q < n - t_ || q > n - 1)
    throw ArgumentError("q=" + std::to_string(q) + " outside [n-t, n-1]");
  std::uint64_t count = 0;
  for (auto v : home_rest_)
    if (j_[v] >= q) ++count;
  return count;
}

std::shared_ptr<const AddressSets> AddressSetCache::get(const DaryString& a, std::span<const DaryString> outputs, int t) {
  std::vector<std::uint64_t> bs;
  for (const auto& b : outputs) bs.push_back(b.index());
  std::sort(bs.begin(), bs.end());
  Key key{a.base(), a.size(), a.index(), bs, t};
  {
    std::lock_guard lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto built = std::make_shared<const AddressSets>(a, outputs, t);
  std::lock_guard lock(mu_);
  return entries_.emplace(std::move(key), std::move(built)).first->second;
}

std::size_t AddressSetCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace nonblock
