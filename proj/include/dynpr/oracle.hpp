#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "dynpr/graph.hpp"

namespace dynpr {

class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PowerIterationOptions {
  double tolerance = 1e-10;
  /// 0 selects max(1000, ceil(100 / eps)).
  std::size_t max_iterations = 0;
};

/// Stationary distribution of the walk that teleports uniformly with
/// probability eps and otherwise follows a uniform out-arc (parallel arcs
/// weighted by multiplicity).
///
/// Iterates x <- (1-eps) x P + eps/n from the uniform vector and stops once
/// (1-eps)/eps * ||x_{k+1} - x_k||_1 <= tolerance, which bounds the distance
/// to the true fixed point. Cost per iteration is O(n + m).
std::vector<double> power_iteration(const DynamicMultigraph& g, double eps,
                                    const PowerIterationOptions& options = {});

using Trajectory = std::vector<VertexId>;

/// Exact law of a `steps`-step walk (no teleports) from `start`. Only for
/// tiny graphs: requires n^(steps+1) <= 10^6.
std::map<Trajectory, double> enumerate_walk_distribution(const DynamicMultigraph& g,
                                                         VertexId start,
                                                         std::size_t steps);

/// Number of coordinates i with |a_i - b_i| >= threshold.
std::size_t count_changed_coordinates(std::span<const double> a,
                                      std::span<const double> b, double threshold);

/// Vertices with a directed path to v (v included), ascending.
std::vector<VertexId> reachable_ancestors(const DynamicMultigraph& g, VertexId v);

/// sum_i |a_i - b_i|.
double l1_distance(std::span<const double> a, std::span<const double> b);

}  // namespace dynpr
