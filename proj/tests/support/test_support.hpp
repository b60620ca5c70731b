#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "dynpr/graph.hpp"
#include "dynpr/oracle.hpp"

namespace testing_support {

using dynpr::DynamicMultigraph;
using dynpr::GraphMode;
using dynpr::VertexId;

/// PageRank by a dense LU solve of pi (I - (1-eps) P) = eps/n 1.
inline std::vector<double> dense_pagerank(const DynamicMultigraph& g, double eps) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    const double deg = g.out_degree(u);
    for (const auto& nb : g.out_neighbors(u)) {
      a(nb.vertex, u) -= (1.0 - eps) * nb.multiplicity / deg;
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, eps / static_cast<double>(n));
  Eigen::VectorXd x = a.partialPivLu().solve(rhs);
  return {x.data(), x.data() + n};
}

/// m uniformly random non-loop edges over n vertices (repeats allowed).
inline DynamicMultigraph random_graph(std::size_t n, std::size_t m, GraphMode mode,
                                      std::mt19937_64& rng,
                                      dynpr::SelfLoops loops = dynpr::SelfLoops::kProtected) {
  DynamicMultigraph g(n, mode, loops);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  for (std::size_t k = 0; k < m;) {
    const VertexId u = pick(rng);
    const VertexId v = pick(rng);
    if (u == v) continue;
    g.insert_edge(u, v);
    ++k;
  }
  return g;
}

/// A non-loop pair chosen uniformly.
inline std::pair<VertexId, VertexId> random_pair(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  for (;;) {
    const VertexId u = pick(rng);
    const VertexId v = pick(rng);
    if (u != v) return {u, v};
  }
}

/// A deletable non-loop edge chosen uniformly among stored arcs.
inline std::pair<VertexId, VertexId> random_existing_edge(const DynamicMultigraph& g,
                                                          std::mt19937_64& rng) {
  std::vector<dynpr::Edge> candidates;
  for (const auto& e : g.arcs()) {
    if (e.from != e.to && g.deletable(e.from, e.to)) candidates.push_back(e);
  }
  if (candidates.empty()) return {0, 0};
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  const auto& e = candidates[pick(rng)];
  return {e.from, e.to};
}

template <typename Key>
double total_variation(const std::map<Key, double>& p, const std::map<Key, double>& q) {
  double sum = 0.0;
  for (const auto& [key, mass] : p) {
    auto it = q.find(key);
    sum += std::abs(mass - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [key, mass] : q) {
    if (!p.count(key)) sum += mass;
  }
  return sum / 2.0;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace testing_support
