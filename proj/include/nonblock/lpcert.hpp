#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nonblock/dary.hpp"
#include "nonblock/multilog.hpp"
#include "nonblock/rational.hpp"

namespace nonblock {

// Primal blocking LP for one request (a, B) in log_d(N, 0, m) under the
// window algorithm. Link-blocking uses threshold i + j >= n, crosstalk-free
// i + j >= n - 1.
struct LpInstance {
  int d = 2;
  int n = 3;
  int t = 0;
  std::int64_t f = 1;
  Mode mode = Mode::LinkBlocking;
  std::shared_ptr<const AddressSets> sets;

  // Defined variables, sorted: (u, w) over foreign windows, (u, v) over the
  // rest of the home window.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> uw;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> uv;

  std::int64_t k() const { return sets->k(); }
  int threshold() const { return mode == Mode::LinkBlocking ? n : n - 1; }
  // Index into uw / uv, or -1 when the pair is not a variable.
  std::int64_t uw_index(std::uint64_t u, std::uint64_t w) const;
  std::int64_t uv_index(std::uint64_t u, std::uint64_t v) const;
};

LpInstance build_instance(int d, int n, int t, std::int64_t f, std::uint64_t a, std::span<const std::uint64_t> B,
                          Mode mode);
LpInstance build_instance(int d, int n, int t, std::int64_t f, const DaryString& a, std::span<const DaryString> B,
                          Mode mode);
// a = 0^n, B = the k smallest outputs of window 0.
LpInstance canonical_instance(int d, int n, int t, std::int64_t f, std::int64_t k, Mode mode);

struct PrimalSolution {
  std::vector<Rational> x_uw;  // parallel to LpInstance::uw
  std::vector<Rational> x_uv;  // parallel to LpInstance::uv
};

struct DualSolution {
  std::vector<Rational> alpha;  // by window index
  std::vector<Rational> beta;   // parallel to LpInstance::uw
  std::vector<Rational> gamma;  // by input index
  std::vector<Rational> delta;  // by output index
  std::vector<Rational> eps;    // by input index
  int p = -1;                   // family parameters, -1 for special duals
  int q = -1;
};

PrimalSolution zero_primal(const LpInstance& inst);
DualSolution zero_dual(const LpInstance& inst);

Rational primal_objective(const LpInstance& inst, const PrimalSolution& x);
Rational dual_objective(const LpInstance& inst, const DualSolution& y);

struct Violation {
  std::string constraint;  // "DC-1", "DC-2", "nonneg", "window-capacity", ...
  std::string detail;
};

// All violated constraints, up to `limit`.
std::vector<Violation> primal_violations(const LpInstance& inst, const PrimalSolution& x, std::size_t limit = 16);
std::vector<Violation> dual_violations(const LpInstance& inst, const DualSolution& y, std::size_t limit = 16);

// Throw CertificateError naming the first violated constraint.
void check_primal(const LpInstance& inst, const PrimalSolution& x);
void check_dual(const LpInstance& inst, const DualSolution& y);

// dual objective - primal objective after checking both.
Rational check_weak_duality(const LpInstance& inst, const PrimalSolution& x, const DualSolution& y);

// One blocking branch per blocking plane of the instance's request, as 0/1
// variables. The request must be admissible in `sim`.
PrimalSolution primal_from_state(const MultilogSim& sim, const LpInstance& inst);

// The (p, q) dual assignment. 0 <= p <= n-t-1, n-t <= q <= n.
DualSolution dual_family(const LpInstance& inst, int p, int q);
// Objective with |union_{j>=q} B_j| replaced by min{d^t - k, k(d^{n-q} - 1)}.
Rational union_bound_objective(const LpInstance& inst, const DualSolution& y);

enum class SpecialVariant {
  Auto,
  LinkLargeFanout,  // f > d^(n-2): gamma on i >= 1
  LinkSmallFanout,  // f <= d^(n-2): q = floor((n+r)/2) + 1
  CfAllOutputs,     // crosstalk-free, k > d^(n-2)(d-1): delta on every free output
  CfTopLevel,       // crosstalk-free, f > d^(n-2)(d-1) >= k: gamma on i >= 1, delta on B_{n-1}
  CfSmallFanout,    // crosstalk-free, f <= d^(n-2)(d-1)
};

const char* to_string(SpecialVariant v);
SpecialVariant resolve_variant(const LpInstance& inst, SpecialVariant v);

// t = n duals. Throws ArgumentError for t != n or a variant of the other mode.
DualSolution dual_special_t_eq_n(const LpInstance& inst, SpecialVariant variant = SpecialVariant::Auto);

// CPLEX LP text of the primal. Variables x_u<u>_w<w> and x_u<u>_v<v>.
std::string export_lp(const LpInstance& inst);

}  // namespace nonblock
