#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "nonblock/adversary.hpp"
#include "nonblock/multilog.hpp"

namespace nonblock {

unsigned default_threads();

// fn(i) for i in [0, count) on a pool of `threads` workers. Results come back
// in index order; the first exception thrown by any task is rethrown.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, F&& fn, unsigned threads) {
  std::vector<R> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

enum class Topology { Multilog, Clos, Benes };
const char* to_string(Topology t);

struct SweepSpec {
  Topology topology = Topology::Multilog;
  std::vector<int> d{2};
  std::vector<int> n{3};
  std::vector<int> t{0};
  std::vector<std::int64_t> f{1};
  std::vector<int> r{2};         // Clos input/output crossbar count
  std::vector<int> m_offset{0};  // m = certified bound + offset
  int trials = 100;
  int events = 200;
  std::uint64_t seed = 1;
  Adversary adversary = Adversary::Random;
  int depth = 12;       // Exhaustive search depth
  int depth_cap = 20;
  Mode mode = Mode::LinkBlocking;

  // Throws ArgumentError.
  void validate() const;
};

struct SweepRow {
  Topology topology = Topology::Multilog;
  int d = 0;
  int n = 0;
  int t = 0;
  std::int64_t f = 0;
  int r = 0;
  int m_offset = 0;
  std::int64_t m = 0;
  int trials = 0;
  std::int64_t arrivals = 0;
  std::int64_t blocked = 0;
  int max_unavailable = 0;
  std::int64_t invariant_violations = 0;
};

struct Report {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // grid order

  // Rows at m >= bound saw no blocking and no invariant violation.
  bool ok() const;
  std::string csv() const;
};

Report run_sweep(const SweepSpec& spec, unsigned threads = default_threads());

}  // namespace nonblock
