#pragma once

#include <optional>
#include <vector>

#include "nonblock/rational.hpp"

namespace nonblock {

struct LpSolution {
  std::vector<Rational> x;
  Rational objective;
};

// min c.x subject to A x >= b, x >= 0, solved exactly by enumerating basic
// solutions. Meant for the handful of variables in a coloring scheme; the
// work grows as C(rows + cols, cols). Returns nullopt when infeasible.
// Among optimal vertices the lexicographically smallest x is returned.
std::optional<LpSolution> minimize_covering_lp(const std::vector<std::vector<Rational>>& A,
                                               const std::vector<Rational>& b,
                                               const std::vector<Rational>& c);

// Solves the square system M y = r; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> M, std::vector<Rational> r);

}  // namespace nonblock
