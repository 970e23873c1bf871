#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace nonblock {

// Base-d digit string, most significant digit first. Used for input/output
// addresses (length n) and switching-element labels (length n-1).
class DaryString {
 public:
  DaryString() = default;
  DaryString(int base, std::vector<std::uint8_t> digits);

  static DaryString parse(int base, std::string_view text);
  static DaryString from_index(int base, int length, std::uint64_t index);
  static DaryString zeros(int base, int length);

  int base() const { return base_; }
  int size() const { return static_cast<int>(digits_.size()); }
  bool empty() const { return digits_.empty(); }

  // 0-based digit access. Paper-style 1-based position s is digit(s - 1).
  int digit(int pos) const { return digits_[static_cast<std::size_t>(pos)]; }
  std::span<const std::uint8_t> digits() const { return digits_; }

  // Integer value of the digit string.
  std::uint64_t index() const;

  // Digits [pos, pos + len).
  DaryString substr(int pos, int len) const;
  // First size()-1 digits (u_{1..n-1}).
  DaryString head() const { return substr(0, size() - 1); }

  std::string str() const;

  friend bool operator==(const DaryString&, const DaryString&) = default;
  friend auto operator<=>(const DaryString& a, const DaryString& b) {
    return std::tie(a.base_, a.digits_) <=> std::tie(b.base_, b.digits_);
  }

 private:
  int base_ = 2;
  std::vector<std::uint8_t> digits_;
};

// Longest common prefix / suffix length. Throws ArgumentError on base or
// length mismatch.
int lcp(const DaryString& u, const DaryString& v);
int lcs(const DaryString& u, const DaryString& v);

// Index of the window of size d^t containing v: the value of its first
// n - t digits. t must lie in [0, n].
std::uint64_t window_index(const DaryString& v, int t);

// Integer-address helpers shared by the simulators. An address index x in
// [0, d^n) has digits x_1..x_n with x_1 most significant.
struct Radix {
  int d = 2;
  int n = 1;
  std::vector<std::uint64_t> pow;  // pow[i] = d^i, i in [0, n]

  Radix() = default;
  Radix(int base, int length);

  std::uint64_t count() const { return pow[static_cast<std::size_t>(n)]; }
  // 1-based digit position s in [1, n].
  int digit(std::uint64_t x, int s) const {
    return static_cast<int>((x / pow[static_cast<std::size_t>(n - s)]) % static_cast<std::uint64_t>(d));
  }
  // lcp / lcs of the (n-1)-digit heads x_{1..n-1}, y_{1..n-1}.
  int head_lcp(std::uint64_t x, std::uint64_t y) const;
  int head_lcs(std::uint64_t x, std::uint64_t y) const;
  std::uint64_t window(std::uint64_t x, int t) const { return x / pow[static_cast<std::size_t>(t)]; }
};

// The sets A_i (inputs by exact head-suffix overlap with a) and B_j (outputs
// by exact head-prefix overlap with some member of B), for one request (a, B)
// whose outputs sit in a single window of size d^t.
class AddressSets {
 public:
  AddressSets(const DaryString& a, std::span<const DaryString> outputs, int t);

  int base() const { return radix_.d; }
  int length() const { return radix_.n; }
  int t() const { return t_; }
  int k() const { return static_cast<int>(b_.size()); }
  const Radix& radix() const { return radix_; }

  std::uint64_t a() const { return a_; }
  const std::vector<std::uint64_t>& b() const { return b_; }
  std::uint64_t home_window() const { return home_window_; }
  std::uint64_t window_count() const { return window_count_; }

  // i(u); nullopt for u = a.
  std::optional<int> i_of(std::uint64_t u) const;
  // j(v): the largest j with v in B_j; nullopt for v in B.
  std::optional<int> j_of(std::uint64_t v) const;
  // j(w) for a window other than the home window; nullopt for the home window.
  std::optional<int> j_of_window(std::uint64_t w) const;

  std::optional<int> i_of(const DaryString& u) const { return i_of(u.index()); }
  std::optional<int> j_of(const DaryString& v) const { return j_of(v.index()); }

  bool in_b_j(std::uint64_t v, int j) const;

  const std::vector<std::uint64_t>& A(int i) const { return a_sets_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::uint64_t>& B(int j) const { return b_sets_.at(static_cast<std::size_t>(j)); }
  // Outputs of the home window not in B (= union of B_j for j >= n - t).
  const std::vector<std::uint64_t>& home_rest() const { return home_rest_; }
  // Windows w != home, in increasing order.
  const std::vector<std::uint64_t>& other_windows() const { return other_windows_; }

  std::vector<DaryString> A_strings(int i) const;
  std::vector<DaryString> B_strings(int j) const;

  // |union_{j=q}^{n-1} B_j| for n - t <= q <= n - 1.
  std::uint64_t union_b_tail(int q) const;

 private:
  Radix radix_;
  int t_;
  std::uint64_t a_;
  std::vector<std::uint64_t> b_;
  std::uint64_t home_window_;
  std::uint64_t window_count_;
  std::vector<std::int8_t> i_;
  std::vector<std::int8_t> j_;
  std::vector<std::uint64_t> jmask_;
  std::vector<std::int8_t> jw_;
  std::vector<std::vector<std::uint64_t>> a_sets_;
  std::vector<std::vector<std::uint64_t>> b_sets_;
  std::vector<std::uint64_t> home_rest_;
  std::vector<std::uint64_t> other_windows_;
};

// Lazily built, shared AddressSets keyed by (a, B, t). Thread-safe.
class AddressSetCache {
 public:
  std::shared_ptr<const AddressSets> get(const DaryString& a, std::span<const DaryString> outputs, int t);
  std::size_t size() const;

 private:
  using Key = std::tuple<int, int, std::uint64_t, std::vector<std::uint64_t>, int>;
  mutable std::mutex mu_;
  std::map<Key, std::shared_ptr<const AddressSets>> entries_;
};

}  // namespace nonblock
