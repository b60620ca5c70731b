#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "dynpr/hard_instance.hpp"
#include "dynpr/oracle.hpp"
#include "test_support.hpp"

using namespace dynpr;

namespace {

// One step of x -> x M with M the full jump-augmented transition matrix.
std::vector<double> apply_transition(const DynamicMultigraph& g, double eps,
                                     const std::vector<double>& x) {
  const std::size_t n = g.num_vertices();
  std::vector<double> y(n, eps / n);
  for (VertexId u = 0; u < n; ++u) {
    for (const auto& nb : g.out_neighbors(u)) {
      y[nb.vertex] += (1 - eps) * x[u] * nb.multiplicity / g.out_degree(u);
    }
  }
  return y;
}

}  // namespace

TEST_CASE("single self-loop vertex has all the mass") {
  auto g = create_graph(1, GraphMode::kDirected);
  auto pi = power_iteration(g, 0.3);
  REQUIRE(pi.size() == 1);
  CHECK(pi[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("star with self-loop leaves") {
  DynamicMultigraph g(4, GraphMode::kDirected, SelfLoops::kNone);
  for (VertexId leaf = 1; leaf <= 3; ++leaf) {
    g.insert_edge(0, leaf);
    g.insert_edge(leaf, leaf);
  }
  auto pi = power_iteration(g, 0.2);
  CHECK(std::abs(pi[0] - 0.05) < 1e-10);
  for (VertexId leaf = 1; leaf <= 3; ++leaf) {
    CHECK(std::abs(pi[leaf] - (0.25 + 0.8 / 12)) < 1e-10);
  }
}

TEST_CASE("self-loop sink gets its incoming mass plus 1/n") {
  std::mt19937_64 rng(5);
  const double eps = 0.25;
  for (int trial = 0; trial < 10; ++trial) {
    auto g = testing_support::random_graph(10, 25, GraphMode::kDirected, rng,
                                           SelfLoops::kNone);
    // Vertex 9 keeps only a self-loop; everybody else gets one too so nobody dangles.
    for (const auto& nb : std::vector<Neighbor>(g.out_neighbors(9))) {
      for (std::uint32_t k = 0; k < nb.multiplicity; ++k) g.delete_edge(9, nb.vertex);
    }
    for (VertexId v = 0; v < 10; ++v) g.insert_edge(v, v);
    auto pi = power_iteration(g, eps);
    double incoming = 0;
    for (VertexId u = 0; u < 9; ++u) {
      incoming += (1 - eps) * (pi[u] / eps) * g.multiplicity(u, 9) / g.out_degree(u);
    }
    CHECK(std::abs(pi[9] - (incoming + 0.1)) < 1e-9);
  }
}

TEST_CASE("power iteration is a fixed point that sums to one") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const double eps = 0.05 + 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
    const GraphMode mode = trial % 2 ? GraphMode::kUndirected : GraphMode::kDirected;
    auto g = testing_support::random_graph(30, 80, mode, rng);
    auto pi = power_iteration(g, eps);
    CHECK(std::abs(std::accumulate(pi.begin(), pi.end(), 0.0) - 1.0) < 1e-9);
    auto next = apply_transition(g, eps, pi);
    CHECK(l1_distance(next, pi) <= 1e-10);
    for (double x : pi) CHECK(x >= 0.0);
  }
}

TEST_CASE("power iteration agrees with a dense solve on tiny graphs") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const GraphMode mode = trial % 3 == 0 ? GraphMode::kUndirected : GraphMode::kDirected;
    auto g = n > 1 ? testing_support::random_graph(n, rng() % 15, mode, rng)
                   : create_graph(1, mode);
    const double eps = 0.15 + 0.1 * (trial % 5);
    auto pi = power_iteration(g, eps);
    auto dense = testing_support::dense_pagerank(g, eps);
    for (std::size_t v = 0; v < n; ++v) CHECK(std::abs(pi[v] - dense[v]) < 1e-8);
  }
}

TEST_CASE("power iteration gives up loudly") {
  std::mt19937_64 rng(1);
  auto g = testing_support::random_graph(20, 60, GraphMode::kDirected, rng);
  CHECK_THROWS_AS(power_iteration(g, 0.01, {1e-14, 2}), NonConvergenceError);
  DynamicMultigraph dangling(2, GraphMode::kDirected, SelfLoops::kNone);
  dangling.insert_edge(0, 1);
  CHECK_THROWS_AS(power_iteration(dangling, 0.2), DanglingVertexError);
}

TEST_CASE("walk enumeration") {
  auto g = create_graph(3, GraphMode::kDirected);
  auto point = enumerate_walk_distribution(g, 2, 0);
  REQUIRE(point.size() == 1);
  CHECK(point.begin()->first == Trajectory{2});
  CHECK(point.begin()->second == 1.0);

  DynamicMultigraph path(5, GraphMode::kUndirected, SelfLoops::kNone);
  for (VertexId v = 0; v + 1 < 5; ++v) path.insert_edge(v, v + 1);
  double via_four = 0;
  for (const auto& [walk, p] : enumerate_walk_distribution(path, 2, 2)) {
    if (walk[1] == 3) via_four += p;
  }
  CHECK(via_four == doctest::Approx(0.5));

  DynamicMultigraph cycle(2, GraphMode::kDirected, SelfLoops::kNone);
  cycle.insert_edge(0, 1);
  cycle.insert_edge(1, 0);
  auto law = enumerate_walk_distribution(cycle, 0, 2);
  REQUIRE(law.size() == 1);
  CHECK(law.begin()->first == Trajectory{0, 1, 0});

  auto big = create_graph(20, GraphMode::kDirected);
  CHECK_THROWS_AS(enumerate_walk_distribution(big, 0, 5), TooLargeError);
}

TEST_CASE("walk enumeration marginals match matrix powers") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + trial % 4;
    auto g = testing_support::random_graph(n, 2 * n, GraphMode::kDirected, rng);
    const std::size_t steps = 4;
    auto law = enumerate_walk_distribution(g, 0, steps);
    std::vector<double> dist(n, 0.0);
    dist[0] = 1.0;
    double total = 0;
    for (const auto& [walk, p] : law) total += p;
    CHECK(std::abs(total - 1.0) < 1e-12);
    for (std::size_t t = 1; t <= steps; ++t) {
      std::vector<double> next(n, 0.0);
      for (VertexId u = 0; u < n; ++u) {
        for (const auto& nb : g.out_neighbors(u)) {
          next[nb.vertex] += dist[u] * nb.multiplicity / g.out_degree(u);
        }
      }
      dist = next;
      std::vector<double> marginal(n, 0.0);
      for (const auto& [walk, p] : law) marginal[walk[t]] += p;
      for (std::size_t v = 0; v < n; ++v) CHECK(std::abs(marginal[v] - dist[v]) < 1e-12);
    }
  }
}

TEST_CASE("count_changed_coordinates") {
  std::vector<double> a{0.1, 0.2, 0.3};
  CHECK(count_changed_coordinates(a, a, 1e-12) == 0);
  std::vector<double> z{0, 0}, e{1, 0};
  CHECK(count_changed_coordinates(z, e, 0.5) == 1);
  CHECK_THROWS_AS(count_changed_coordinates(a, z, 0.5), std::invalid_argument);
}

TEST_CASE("reachable ancestors") {
  auto lone = create_graph(3, GraphMode::kDirected);
  CHECK(reachable_ancestors(lone, 1) == std::vector<VertexId>{1});

  auto path = create_graph(4, GraphMode::kDirected);
  path.insert_edge(0, 1);
  path.insert_edge(1, 2);
  CHECK(reachable_ancestors(path, 2) == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("ancestors of c0 on a completed hard instance") {
  const auto spec = build_instance(custom_params(64, 0.5, 2, 2, 2, 8));
  auto g = spec.initial_graph();
  for (const auto& e : spec.updates) g.insert_edge(e.from, e.to);
  const auto& lm = spec.landmarks;
  auto anc = reachable_ancestors(g, lm.c0);
  std::vector<VertexId> expected;
  for (VertexId v = 0; v < spec.parent.size(); ++v) {
    bool leaf = std::find(lm.leaves.begin(), lm.leaves.end(), v) != lm.leaves.end();
    if (!leaf) expected.push_back(v);
  }
  for (std::size_t i = 2; i <= lm.leaves.size(); i += 2) expected.push_back(lm.leaves[i - 1]);
  expected.push_back(lm.c0);
  for (VertexId src : lm.sources) expected.push_back(src);
  std::sort(expected.begin(), expected.end());
  CHECK(anc == expected);
  for (VertexId v : lm.star1) CHECK(!std::binary_search(anc.begin(), anc.end(), v));
}
