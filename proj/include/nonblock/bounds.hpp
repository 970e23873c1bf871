#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nonblock/multilog.hpp"
#include "nonblock/rational.hpp"

namespace nonblock {

struct BoundResult {
  Rational value;
  std::int64_t m_sufficient = 1;  // 1 + ceil(value) for "m >= 1 + value" forms
  std::string branch;             // matched rows joined by '+', minimum first
  std::vector<std::string> matched;
  int d = 0;
  int n = 0;
  int t = 0;
  std::int64_t f = 0;
};

// Which transcription of the crosstalk-free table to evaluate.
//   Printed: every row exactly as typeset.
//   Derived: rows 1, 4, 5 and 8 replaced by the values their own proofs
//            give (exponent 2t-n-2 in row 1, the d^p - 1 term of p = n-t-r
//            in row 4, factor (d-1) in row 5, (2t-n+r) in row 8). Default;
//            see README.
enum class GForm { Printed, Derived };

// Largest family parameter p: n-t-1 for link blocking, n-t for crosstalk-free
// (where p = n-t leaves every DC-1 constraint to epsilon).
int max_p(Mode mode, int n, int t);

// Dual objective of the (p, q) certificate, link-blocking model.
Rational c_cost(int d, int n, int t, std::int64_t f, std::int64_t k, int p, int q);
// Same, crosstalk-free model.
Rational g_cost(int d, int n, int t, std::int64_t f, std::int64_t k, int p, int q);
// Label of the cost-table row used ("c1".."c6" / "g1".."g6").
std::string c_cost_branch(int d, int n, int t, int p, int q);
std::string g_cost_branch(int d, int n, int t, int p, int q);
Rational cost(Mode mode, int d, int n, int t, std::int64_t f, std::int64_t k, int p, int q);

BoundResult C_bound(int d, int n, int t, std::int64_t f);
BoundResult G_bound(int d, int n, int t, std::int64_t f, GForm form = GForm::Derived);
BoundResult table_bound(Mode mode, int d, int n, int t, std::int64_t f);

struct Enumerated {
  Rational max_min;       // max_k min_{p,q} cost
  std::int64_t m_sufficient;
  std::int64_t worst_k;
  int best_p;             // argmin for worst_k (first in (p, q) order)
  int best_q;
};
Enumerated sufficient_m_enumerated(int d, int n, int t, std::int64_t f, Mode mode);

std::int64_t clos_snb(int n);
std::int64_t clos_wsnb_r2(int n);
enum class MultirateScheme { FourType, FiveTypePaper };
std::int64_t clos_multirate(int n, MultirateScheme scheme);

std::int64_t hwang_unicast(int d, int n);
Rational wang07(int d, int n, std::int64_t f);
std::int64_t snb_fcast_t_eq_n(int d, int n, std::int64_t f);
std::int64_t cf_snb_fcast_t_eq_n(int d, int n, std::int64_t f);
Rational danilewicz(int d, int n, int t);
Rational cf_wsnb_window(int d, int n, int t);
Rational h(int d, int n, std::int64_t k);
Rational hbar(int d, int n, std::int64_t k);

// Smallest m the library certifies for a multilog configuration: the table
// bound for t < n, the t = n corollaries otherwise.
std::int64_t multilog_m_sufficient(Mode mode, int d, int n, int t, std::int64_t f);

}  // namespace nonblock
