#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynpr/graph.hpp"
#include "dynpr/ranked_id_set.hpp"

namespace dynpr {

using WalkId = std::uint32_t;

/// Vertex sequence of a walk. Position 1 is the origin, so a walk with
/// `length()` steps occupies positions 1 .. length() + 1.
struct Walk {
  std::vector<VertexId> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  VertexId at(std::size_t position) const { return vertices.at(position - 1); }
};

/// The walk set together with its three index families:
///
///  - S(v, t): ids of walks whose position-t vertex is v, rank-selectable;
///  - W(e):    ids of walks traversing edge e, with traversal counts;
///  - X(v):    total visits to v over all walks, repeats included.
///
/// In directed graphs W is keyed by arc (u, v). In undirected graphs it is
/// keyed by the unordered pair {u, v} and counts traversals in both
/// directions, so a query never needs to merge two buckets.
///
/// Ids are dense and assigned once. replace_suffix() rewrites a walk in place
/// and only touches the index entries of the rewritten positions.
class WalkStore {
 public:
  WalkStore(std::size_t num_vertices, GraphMode mode);

  WalkId add_walk(Walk walk);
  Walk remove_walk(WalkId id);

  /// Keeps positions 1..keep and appends `tail` as positions keep+1, ...
  /// The caller is responsible for keeping the walk length unchanged.
  void replace_suffix(WalkId id, std::size_t keep, std::span<const VertexId> tail);

  bool contains(WalkId id) const;
  const Walk& walk(WalkId id) const;

  /// Number of stored walks.
  std::size_t size() const { return live_; }
  /// All ids ever issued are below this bound.
  std::size_t id_bound() const { return walks_.size(); }

  std::size_t count_at(VertexId v, std::size_t position) const;
  /// The rank-th smallest id in S(v, position); rank is 1-based.
  WalkId select_walk_at(VertexId v, std::size_t position, std::size_t rank) const;

  /// Ids of walks using the edge; in undirected graphs either direction.
  std::vector<WalkId> walks_on_edge(VertexId u, VertexId v) const;
  std::uint32_t traversals(WalkId id, VertexId u, VertexId v) const;
  std::size_t edge_load(VertexId u, VertexId v) const;
  /// Largest |W(e)| ever reached since construction.
  std::size_t peak_edge_load() const { return peak_edge_load_; }
  /// Largest |W(e)| over the current state.
  std::size_t max_edge_load() const;

  std::uint64_t visits(VertexId v) const { return visits_.at(v); }
  std::uint64_t total_visits() const { return total_visits_; }

  /// Largest vertex count among stored walks (0 when empty).
  std::size_t max_positions() const;

  /// One line per walk: `id: v1 v2 ... vL+1`.
  void dump(std::ostream& out) const;

  /// Rebuilds all indices from the raw walks and compares them with the
  /// incremental state. Empty string when they agree.
  std::string audit() const;

 private:
  using EdgeBucket = std::unordered_map<WalkId, std::uint32_t>;

  std::uint64_t edge_key(VertexId u, VertexId v) const;
  void index_range(WalkId id, const Walk& walk, std::size_t first_position);
  void unindex_range(WalkId id, const Walk& walk, std::size_t first_position);
  void check_id(WalkId id) const;

  GraphMode mode_;
  std::vector<Walk> walks_;
  std::vector<char> alive_;
  std::size_t live_ = 0;
  std::vector<std::vector<RankedIdSet>> positions_;
  std::unordered_map<std::uint64_t, EdgeBucket> edges_;
  std::vector<std::uint64_t> visits_;
  std::uint64_t total_visits_ = 0;
  std::vector<std::size_t> walks_by_size_;
  std::size_t peak_edge_load_ = 0;
};

}  // namespace dynpr
