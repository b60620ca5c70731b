#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>

#include "dynpr/hard_instance.hpp"
#include "dynpr/oracle.hpp"
#include "dynpr/stream.hpp"

using namespace dynpr;

namespace {

// Vertices reachable from any source, by forward search.
std::vector<char> reachable_from_sources(const DynamicMultigraph& g, const HardLandmarks& lm) {
  std::vector<char> seen(g.num_vertices(), 0);
  std::deque<VertexId> queue(lm.sources.begin(), lm.sources.end());
  for (VertexId s : lm.sources) seen[s] = 1;
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    for (const auto& nb : g.out_neighbors(u)) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        queue.push_back(nb.vertex);
      }
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("small custom instance layout") {
  const auto spec = build_instance(custom_params(64, 0.5, 2, 2, 2, 8));
  CHECK(spec.params.tree_size() == 7);
  CHECK(spec.landmarks.leaves.size() == 4);
  CHECK(spec.checkpoints.size() == 4);
  CHECK(spec.landmarks.leaves == std::vector<VertexId>{2, 3, 5, 6});
  CHECK(spec.landmarks.c0 == 7);
  CHECK(spec.landmarks.c1 == 8);
  CHECK(spec.landmarks.sources.size() == 16);
  CHECK(spec.landmarks.first_padding == 9 + 16 + 16);
  // rounds: vertex 3 and vertex 4 get p copies, vertex 6 gets p copies too
  CHECK(spec.updates.size() == 6);

  const auto g = spec.initial_graph();
  CHECK(g.num_vertices() == 64);
  for (VertexId v = 0; v < 64; ++v) CHECK(g.out_degree(v) >= 1);
  CHECK(g.multiplicity(0, 1) == 1);
  CHECK(g.multiplicity(0, 4) == 0);
  CHECK(g.multiplicity(1, 3) == 0);
  for (VertexId src : spec.landmarks.sources) {
    CHECK(g.out_degree(src) == 1);
    CHECK(g.multiplicity(src, 0) == 1);
  }
  for (VertexId leaf : spec.landmarks.star0) CHECK(g.multiplicity(leaf, leaf) == 1);
  for (VertexId v = spec.landmarks.first_padding; v < 64; ++v) CHECK(g.multiplicity(v, v) == 1);
  // l_1 feeds c_1, l_2 feeds c_0
  CHECK(g.multiplicity(2, spec.landmarks.c1) == 1);
  CHECK(g.multiplicity(3, spec.landmarks.c0) == 1);
}

TEST_CASE("additive parameters") {
  auto a = additive_params(4096, 0.5, 1e-4);
  CHECK(a.p == 2);
  CHECK(a.d == 2);
  CHECK(a.t == 6);
  CHECK(a.s == 1024);
  CHECK_THROWS_AS(additive_params(4096, 0.5, 0.1), InfeasibleParamsError);
  for (std::size_t n : {1000u, 2048u, 4097u}) CHECK(additive_params(n, 0.5, 1e-4).s == n / 4);
  CHECK_THROWS_AS(additive_params(4096, 0.005, 1e-6), InfeasibleParamsError);
}

TEST_CASE("multiplicative parameters") {
  CHECK_THROWS_AS(multiplicative_params(4096, 0.5, 0.5), InfeasibleParamsError);
  const auto huge = multiplicative_formula(std::ldexp(1.0, 60), 0.5);
  CHECK(huge.t == 3);
  CHECK(multiplicative_formula(4096, 0.5).p == 144);
  try {
    multiplicative_params(4096, 0.5, 0.5);
  } catch (const InfeasibleParamsError& e) {
    CHECK(std::string(e.what()).find("custom") != std::string::npos);
  }
}

TEST_CASE("parameter validation reports every violation") {
  CHECK_THROWS_AS(custom_params(64, 0.2, 2, 2, 2, 8), InfeasibleParamsError);  // p < 1/eps
  CHECK_THROWS_AS(custom_params(64, 0.5, 2, 4, 3, 8), InfeasibleParamsError);  // too big
  CHECK_THROWS_AS(custom_params(64, 0.5, 1, 2, 2, 8), InfeasibleParamsError);
  try {
    custom_params(16, 0.1, 2, 2, 2, 8);
    FAIL("expected an error");
  } catch (const InfeasibleParamsError& e) {
    const std::string what = e.what();
    CHECK(what.find("1/eps") != std::string::npos);
    CHECK(what.find("exceeds") != std::string::npos);
  }
}

TEST_CASE("leaves become reachable from the sources inside their completing round") {
  for (auto params : {custom_params(64, 0.5, 2, 2, 2, 8), custom_params(512, 0.25, 4, 3, 3, 32),
                      custom_params(600, 0.3, 4, 2, 4, 40)}) {
    const auto spec = build_instance(params);
    auto g = spec.initial_graph();
    std::vector<std::size_t> first_seen(spec.landmarks.leaves.size(), SIZE_MAX);
    auto scan = [&](std::size_t applied) {
      const auto seen = reachable_from_sources(g, spec.landmarks);
      for (std::size_t i = 0; i < first_seen.size(); ++i) {
        if (first_seen[i] == SIZE_MAX && seen[spec.landmarks.leaves[i]]) first_seen[i] = applied;
      }
    };
    scan(0);
    for (std::size_t k = 0; k < spec.updates.size(); ++k) {
      g.insert_edge(spec.updates[k].from, spec.updates[k].to);
      scan(k + 1);
    }
    // the first copy of the last missing arc opens the path; the checkpoint
    // waits for the remaining copies of that round
    for (std::size_t i = 0; i < first_seen.size(); ++i) {
      const auto& cp = spec.checkpoints[i];
      if (cp.before_index) {
        CHECK(first_seen[i] == *cp.before_index + 1);
        CHECK(cp.update_index > *cp.before_index);
      } else {
        CHECK(first_seen[i] == 0);
        CHECK(cp.update_index == 0);
      }
      CHECK(spec.checkpoints[i].leaf_ordinal == i + 1);
      CHECK(spec.checkpoints[i].parity == static_cast<int>((i + 1) % 2));
      if (i > 0) CHECK(first_seen[i] > first_seen[i - 1]);
    }
    CHECK(!spec.checkpoints[0].before_index);
  }
}

TEST_CASE("round completion leaves at least 1 - 1/p on the newest child") {
  const auto spec = build_instance(custom_params(1024, 0.25, 4, 3, 3, 64));
  auto g = spec.initial_graph();
  const std::size_t tree = spec.params.tree_size();
  for (VertexId v = 1; v < tree; ++v) {
    const std::size_t end = v + 1 < tree ? spec.round_start[v + 1] : spec.updates.size();
    for (std::size_t k = spec.round_start[v]; k < end; ++k) {
      g.insert_edge(spec.updates[k].from, spec.updates[k].to);
    }
    const VertexId parent = spec.parent[v];
    const double share = double(g.multiplicity(parent, v)) / g.out_degree(parent);
    CHECK(share >= 1.0 - 1.0 / spec.params.p - 1e-12);
  }
}

TEST_CASE("leaf pagerank lower bound holds at every checkpoint") {
  for (auto params : {custom_params(256, 0.5, 2, 2, 3, 16), custom_params(512, 0.25, 4, 3, 3, 32),
                      custom_params(300, 0.4, 3, 2, 2, 20)}) {
    const auto spec = build_instance(params);
    auto g = spec.initial_graph();
    const double bound = leaf_pagerank_lower_bound(params.eps, params.d);
    std::size_t applied = 0;
    for (const auto& cp : spec.checkpoints) {
      while (applied < cp.update_index) {
        g.insert_edge(spec.updates[applied].from, spec.updates[applied].to);
        ++applied;
      }
      const auto pi = power_iteration(g, params.eps);
      CHECK(pi[cp.leaf] >= bound);
    }
  }
}

TEST_CASE("stream export marks every checkpoint") {
  const auto spec = build_instance(custom_params(64, 0.5, 2, 2, 2, 8));
  const auto stream = hard_instance_stream(spec);
  CHECK(stream.update_count() == spec.updates.size());
  CHECK(stream.checkpoint_count() == 2 * spec.checkpoints.size() - 1);
  CHECK(stream.records.front().label == "leaf1");
  CHECK(stream.loops == SelfLoops::kNone);
}
