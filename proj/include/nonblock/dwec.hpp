#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nonblock/rational.hpp"

namespace nonblock {

// Weight types are the half-open intervals (breakpoints[i], breakpoints[i-1]]
// with breakpoints[-1] = 1 and a final interval (0, breakpoints.back()].
// Type 0 is (breakpoints[0], 1]; x has one entry per type.
struct DwecScheme {
  std::vector<Rational> breakpoints;
  std::vector<Rational> x;

  int types() const { return static_cast<int>(breakpoints.size()) + 1; }
  Rational upper(int type) const;
  Rational lower(int type) const;
  int classify(const Rational& w) const;
  Rational total() const;

  // 1/2, 2/5, 1/3 with x = (2, 3/8, 3/10, 3).
  static DwecScheme four_type();
  // 1/2, 2/5, 1/3, 11/43 with x from derive_constants.
  static DwecScheme five_type();
};

struct DerivedConstants {
  // beta[i][j]: blocked weight per unavailable class-j color for an arriving
  // type-i edge, i, j >= 1 (row/col 0 unused).
  std::vector<std::vector<Rational>> beta;
  std::vector<Rational> x;
  Rational objective;
};

// Builds and solves the blocking LP for the given descending breakpoints
// (first must be 1/2). Throws InfeasibleScheme when the LP has no solution.
DerivedConstants derive_constants(const std::vector<Rational>& breakpoints);

struct DwecEdge {
  int u = 0;
  int v = 0;
  Rational w;
  int type = 0;
  int color = -1;
};

// Online coloring state. Colors are numbered 0, 1, 2, ... in creation order
// across all classes.
class DwecState {
 public:
  DwecState(DwecScheme scheme, int vertex_count);

  // Returns the assigned color. Throws ArgumentError on bad input and
  // ColoringFailure if no color fits (never expected).
  int arrive(std::uint64_t id, int u, int v, const Rational& w);
  void depart(std::uint64_t id);

  const DwecScheme& scheme() const { return scheme_; }
  int vertex_count() const { return static_cast<int>(load_.size()); }
  const Rational& w_bar() const { return w_bar_; }
  std::int64_t delta_bar() const { return delta_bar_; }
  std::int64_t opt_lower() const;
  std::int64_t colors_used() const { return static_cast<std::int64_t>(color_class_.size()); }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int class_of(int color) const { return color_class_.at(static_cast<std::size_t>(color)); }
  const std::map<std::uint64_t, DwecEdge>& live() const { return live_; }
  bool has_edge(std::uint64_t id) const { return live_.count(id) != 0; }
  const DwecEdge& edge(std::uint64_t id) const;
  Rational vertex_weight(int u) const { return weight_[static_cast<std::size_t>(u)]; }
  Rational color_load(int u, int color) const;

  // Throws std::logic_error on any violated invariant.
  void audit() const;

 private:
  void grow();
  bool fits(int u, int v, int color, const Rational& w) const;

  DwecScheme scheme_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> color_class_;
  std::vector<std::vector<Rational>> load_;  // vertex -> color -> weight
  std::vector<Rational> weight_;
  std::vector<std::int64_t> heavy_;
  Rational w_bar_;
  std::int64_t delta_bar_ = 0;
  std::map<std::uint64_t, DwecEdge> live_;
};

struct WeightedEdge {
  int u = 0;
  int v = 0;
  Rational w;
};

// Minimum number of colors with per-vertex per-color weight <= 1, by exact
// search. Throws SizeLimitError above max_edges.
int opt_exact(const std::vector<WeightedEdge>& edges, std::size_t max_edges = 12);

}  // namespace nonblock
