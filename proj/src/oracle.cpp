#include "dynpr/oracle.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <deque>

namespace dynpr {

std::vector<double> power_iteration(const DynamicMultigraph& g, double eps,
                                    const PowerIterationOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const std::size_t n = g.num_vertices();
  for (VertexId v = 0; v < n; ++v) {
    if (g.out_degree(v) == 0) {
      throw DanglingVertexError(fmt::format("vertex {} has no outgoing edge", v));
    }
  }
  const std::size_t max_iters =
      options.max_iterations ? options.max_iterations
                             : std::max<std::size_t>(1000, std::ceil(100.0 / eps));
  const double jump = eps / static_cast<double>(n);
  const double scale = (1.0 - eps) / eps;

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    std::fill(next.begin(), next.end(), jump);
    for (VertexId u = 0; u < n; ++u) {
      const double share = (1.0 - eps) * x[u] / g.out_degree(u);
      for (const Neighbor& nb : g.out_neighbors(u)) next[nb.vertex] += share * nb.multiplicity;
    }
    const double step = l1_distance(x, next);
    x.swap(next);
    if (scale * step <= options.tolerance) {
      double total = 0.0;
      for (double value : x) total += value;
      for (double& value : x) value /= total;
      return x;
    }
  }
  throw NonConvergenceError(
      fmt::format("power iteration did not reach tolerance {} in {} iterations",
                  options.tolerance, max_iters));
}

std::map<Trajectory, double> enumerate_walk_distribution(const DynamicMultigraph& g,
                                                         VertexId start,
                                                         std::size_t steps) {
  const double states = std::pow(static_cast<double>(g.num_vertices()),
                                 static_cast<double>(steps + 1));
  if (states > 1e6) {
    throw TooLargeError(fmt::format("{}^{} trajectories exceed the 10^6 limit",
                                    g.num_vertices(), steps + 1));
  }
  g.out_degree(start);  // range check

  std::map<Trajectory, double> law;
  Trajectory path{start};
  auto extend = [&](auto&& self, double prob) -> void {
    if (path.size() == steps + 1) {
      law[path] += prob;
      return;
    }
    const VertexId at = path.back();
    const std::uint32_t degree = g.out_degree(at);
    if (degree == 0) {
      throw DanglingVertexError(fmt::format("vertex {} has no outgoing edge", at));
    }
    for (const Neighbor& nb : g.out_neighbors(at)) {
      path.push_back(nb.vertex);
      self(self, prob * nb.multiplicity / degree);
      path.pop_back();
    }
  };
  extend(extend, 1.0);
  return law;
}

std::size_t count_changed_coordinates(std::span<const double> a,
                                      std::span<const double> b, double threshold) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(
        fmt::format("dimension mismatch: {} vs {}", a.size(), b.size()));
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) >= threshold) ++count;
  }
  return count;
}

std::vector<VertexId> reachable_ancestors(const DynamicMultigraph& g, VertexId v) {
  const std::size_t n = g.num_vertices();
  g.out_degree(v);
  std::vector<std::vector<VertexId>> incoming(n);
  for (const Edge& arc : g.arcs()) incoming[arc.to].push_back(arc.from);

  std::vector<char> seen(n, 0);
  std::deque<VertexId> frontier{v};
  seen[v] = 1;
  while (!frontier.empty()) {
    const VertexId at = frontier.front();
    frontier.pop_front();
    for (VertexId from : incoming[at]) {
      if (!seen[from]) {
        seen[from] = 1;
        frontier.push_back(from);
      }
    }
  }
  std::vector<VertexId> out;
  for (VertexId u = 0; u < n; ++u) {
    if (seen[u]) out.push_back(u);
  }
  return out;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total;
}

}  // namespace dynpr
