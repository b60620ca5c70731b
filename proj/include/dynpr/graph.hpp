#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dynpr {

using VertexId = std::uint32_t;

enum class GraphMode { kDirected, kUndirected };

/// How vertices are kept free of dangling states.
///
/// kProtected puts one immutable self-loop on every vertex at construction,
/// so out_degree(v) >= 1 always holds and PageRank is well defined after any
/// update sequence. kNone leaves that to the caller; it exists for
/// constructions that supply their own out-edges (the lower-bound instance,
/// the path example used for the deletion bias experiment).
enum class SelfLoops { kProtected, kNone };

std::string to_string(GraphMode mode);
GraphMode parse_graph_mode(const std::string& text);

class InvalidVertexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class MissingEdgeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ForbiddenDeletionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DanglingVertexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Neighbor {
  VertexId vertex;
  std::uint32_t multiplicity;
};

struct Edge {
  VertexId from;
  VertexId to;
  std::uint32_t multiplicity = 1;
};

/// Multigraph with a fixed vertex set and per-pair multiplicities.
///
/// Undirected graphs store both orientations of every edge with equal
/// multiplicity; an undirected self-loop is stored once and contributes one
/// to the out-degree per copy.
class DynamicMultigraph {
 public:
  DynamicMultigraph(std::size_t n, GraphMode mode,
                    SelfLoops loops = SelfLoops::kProtected);

  std::size_t num_vertices() const { return adjacency_.size(); }
  GraphMode mode() const { return mode_; }
  bool directed() const { return mode_ == GraphMode::kDirected; }
  SelfLoops self_loops() const { return loops_; }

  /// Sum of out-degrees. For undirected graphs each non-loop edge counts twice.
  std::uint64_t total_degree() const { return total_degree_; }

  std::uint32_t out_degree(VertexId u) const;
  std::uint32_t multiplicity(VertexId u, VertexId v) const;
  const std::vector<Neighbor>& out_neighbors(VertexId u) const;

  /// Adds one copy of (u,v); returns the new multiplicity.
  std::uint32_t insert_edge(VertexId u, VertexId v);

  /// Removes one copy of (u,v); returns the remaining multiplicity.
  /// The last copy of a protected self-loop cannot be removed.
  std::uint32_t delete_edge(VertexId u, VertexId v);

  /// True when delete_edge(u, v) would succeed.
  bool deletable(VertexId u, VertexId v) const;

  /// One random-walk step: neighbor w with probability mult(u,w)/out_degree(u).
  template <typename Urbg>
  VertexId sample_out_step(VertexId u, Urbg& rng) const {
    const std::uint32_t degree = out_degree(u);
    if (degree == 0) throw_dangling(u);
    std::uniform_int_distribution<std::uint32_t> pick(0, degree - 1);
    std::uint32_t slot = pick(rng);
    for (const Neighbor& nb : adjacency_[u]) {
      if (slot < nb.multiplicity) return nb.vertex;
      slot -= nb.multiplicity;
    }
    throw std::logic_error("adjacency multiplicities disagree with out-degree");
  }

  /// Every stored arc once per orientation (undirected edges appear twice,
  /// loops once), including protected self-loops.
  std::vector<Edge> arcs() const;

  /// Recomputes degrees and symmetry from scratch; returns an empty string
  /// when consistent, otherwise a description of the first violation.
  std::string audit() const;

 private:
  void check_vertex(VertexId v) const;
  [[noreturn]] void throw_dangling(VertexId u) const;
  std::uint32_t bump(VertexId u, VertexId v);
  std::uint32_t drop(VertexId u, VertexId v);
  std::uint32_t protected_copies(VertexId u, VertexId v) const;

  GraphMode mode_;
  SelfLoops loops_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::unordered_map<VertexId, std::uint32_t>> slot_of_;
  std::vector<std::uint32_t> out_degree_;
  std::uint64_t total_degree_ = 0;
};

inline DynamicMultigraph create_graph(std::size_t n, GraphMode mode,
                                      SelfLoops loops = SelfLoops::kProtected) {
  return DynamicMultigraph(n, mode, loops);
}

/// Edge-list text format:
///
///   n <count> mode <directed|undirected> [selfloops none]
///   u v [mult]
///
/// `#` starts a comment. Protected self-loops are implicit and never written;
/// undirected edges are written once with u <= v.
DynamicMultigraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const DynamicMultigraph& g);

}  // namespace dynpr
