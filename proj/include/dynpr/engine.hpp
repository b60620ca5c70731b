#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dynpr/graph.hpp"
#include "dynpr/sampling.hpp"
#include "dynpr/walk_store.hpp"

namespace dynpr {

enum class WalkMode {
  /// Geometric walk lengths, never truncated. Unbiased estimates.
  kMultiplicative,
  /// Walks longer than the truncation length are dropped at init.
  kAdditive,
};

struct EngineConfig {
  double eps = 0.15;
  double alpha = 0.5;
  WalkMode mode = WalkMode::kMultiplicative;
  /// Overrides ceil(9 ln n / (eps alpha^2)).
  std::optional<std::uint32_t> walks_per_vertex;
  /// Overrides ceil((2/eps) ln(2/(alpha eps))) in additive mode.
  std::optional<std::uint32_t> truncation;
  std::uint64_t seed = 1;

  void validate() const;
  std::uint32_t resolved_walks_per_vertex(std::size_t n) const;
  std::uint32_t resolved_truncation() const;
};

/// ceil(9 ln n / (eps alpha^2)), at least 1.
std::uint32_t default_walks_per_vertex(std::size_t n, double eps, double alpha);
/// ceil((2/eps) ln(2/(alpha eps))), at least 0.
std::uint32_t default_truncation(double eps, double alpha);

/// Explicit walk for engines built from a fixed walk population.
struct WalkSeed {
  VertexId origin;
  std::uint32_t length;
};

/// A walk picked for rerouting during an insertion. `label` is the position
/// whose coin came up; the rebuilt walk keeps positions 1..label and, if it
/// continues past label, steps to `via` next.
struct RerouteRequest {
  WalkId walk;
  std::uint32_t label;
  VertexId via;
};

struct EngineStats {
  std::uint64_t updates = 0;
  std::uint64_t regenerations = 0;
  std::uint64_t peak_edge_load = 0;
  std::chrono::nanoseconds update_time{0};
  std::chrono::nanoseconds max_update_time{0};

  double mean_regenerations_per_walk(std::size_t walks) const {
    return walks ? static_cast<double>(regenerations) / static_cast<double>(walks) : 0.0;
  }
};

/// Dynamic PageRank by maintained random walks.
///
/// Walks are sampled once (R per vertex, geometric lengths with
/// P(L = k) = eps (1-eps)^k) and then repaired after every edge update so
/// that they remain distributed as fresh walks on the current graph:
///
///  - insertion of (u, v): every visit to u is independently rerouted
///    through the new arc with probability 1/d_u (d_u the new out-degree),
///    sampled per position with a binomial draw plus distinct ranks; a walk
///    selected several times is rebuilt from its earliest selected position;
///  - deletion of (u, v): each walk keeps its longest prefix that avoids the
///    deleted copy and regrows the rest at its original length.
///
/// Estimates are X_v * eps / |W|. Walk lengths and |W| never change.
class Engine {
 public:
  Engine(DynamicMultigraph graph, const EngineConfig& config);
  Engine(DynamicMultigraph graph, const EngineConfig& config,
         std::span<const WalkSeed> seeds);

  const DynamicMultigraph& graph() const { return graph_; }
  const WalkStore& walks() const { return store_; }
  const EngineConfig& config() const { return config_; }
  const EngineStats& stats() const { return stats_; }

  std::size_t walk_count() const { return store_.size(); }
  std::uint32_t regenerations_of(WalkId id) const { return regenerations_.at(id); }

  double estimate(VertexId v) const;
  std::vector<double> estimate_all() const;

  /// Inserts one copy of (u, v) and repairs the walks.
  void insert_edge(VertexId u, VertexId v);
  /// Deletes one copy of (u, v) and repairs the walks.
  void delete_edge(VertexId u, VertexId v);
  /// Deletion that regrows every affected walk from its origin. Biased; kept
  /// only to demonstrate why prefixes must be preserved.
  void naive_delete_edge(VertexId u, VertexId v);

  /// Random selection half of an insertion; the arc must already be present.
  std::vector<RerouteRequest> select_for_insertion(VertexId u, VertexId v);
  /// Deterministic half: applies the earliest request per walk.
  void reroute(std::span<const RerouteRequest> requests);

 private:
  void sample_initial_walks(std::span<const WalkSeed> seeds);
  void extend_randomly(std::vector<VertexId>& path, std::size_t steps);
  void collect_from(VertexId at, VertexId via, std::vector<RerouteRequest>& out);
  template <typename Repair>
  void delete_with(VertexId u, VertexId v, Repair&& repair);
  void note_update(std::chrono::steady_clock::time_point start);

  DynamicMultigraph graph_;
  EngineConfig config_;
  Rng rng_;
  WalkStore store_;
  std::vector<std::uint32_t> regenerations_;
  EngineStats stats_;
};

}  // namespace dynpr
