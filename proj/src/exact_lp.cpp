#include "nonblock/exact_lp.hpp"

#include <stdexcept>

namespace nonblock {

std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> M, std::vector<Rational> r) {
  const std::size_t n = M.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && M[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(M[pivot], M[col]);
    std::swap(r[pivot], r[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || M[row][col] == 0) continue;
      const Rational factor = M[row][col] / M[col][col];
      for (std::size_t k = col; k < n; ++k) M[row][k] -= factor * M[col][k];
      r[row] -= factor * r[col];
    }
  }
  std::vector<Rational> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = r[i] / M[i][i];
  return y;
}

std::optional<LpSolution> minimize_covering_lp(const std::vector<std::vector<Rational>>& A,
                                               const std::vector<Rational>& b,
                                               const std::vector<Rational>& c) {
  const std::size_t cols = c.size();
  const std::size_t rows = A.size();
  if (b.size() != rows) throw std::invalid_argument("row count mismatch");
  for (const auto& row : A)
    if (row.size() != cols) throw std::invalid_argument("column count mismatch");

  // Candidate tight constraints: rows of A, then x_j >= 0.
  const std::size_t total = rows + cols;
  auto constraint_row = [&](std::size_t idx) {
    if (idx < rows) return A[idx];
    std::vector<Rational> e(cols, Rational(0));
    e[idx - rows] = 1;
    return e;
  };
  auto constraint_rhs = [&](std::size_t idx) { return idx < rows ? b[idx] : Rational(0); };

  std::optional<LpSolution> best;
  std::vector<std::size_t> pick(cols);
  for (std::size_t i = 0; i < cols; ++i) pick[i] = i;
  if (cols > total) return std::nullopt;
  while (true) {
    std::vector<std::vector<Rational>> M;
    std::vector<Rational> r;
    for (auto idx : pick) {
      M.push_back(constraint_row(idx));
      r.push_back(constraint_rhs(idx));
    }
    if (auto x = solve_square(M, r)) {
      bool feasible = true;
      for (std::size_t j = 0; j < cols && feasible; ++j) feasible = (*x)[j] >= 0;
      for (std::size_t i = 0; i < rows && feasible; ++i) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < cols; ++j) lhs += A[i][j] * (*x)[j];
        feasible = lhs >= b[i];
      }
      if (feasible) {
        Rational obj = 0;
        for (std::size_t j = 0; j < cols; ++j) obj += c[j] * (*x)[j];
        if (!best || obj < best->objective || (obj == best->objective && *x < best->x)) best = LpSolution{*x, obj};
      }
    }
    // next combination
    std::size_t i = cols;
    while (i > 0 && pick[i - 1] == total - cols + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < cols; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

}  // namespace nonblock
