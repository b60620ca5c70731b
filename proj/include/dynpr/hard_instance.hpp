#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynpr/graph.hpp"

namespace dynpr {

class InfeasibleParamsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class HardFlavor { kAdditive, kMultiplicative, kCustom };

/// Shape of the lower-bound instance: a tree H of arity t and depth d whose
/// i-th child (0-based) receives p^i parallel arcs, n/4 source vertices
/// feeding the root, and two stars with s leaves each.
struct HardInstanceParams {
  std::size_t n = 0;
  double eps = 0.5;
  HardFlavor flavor = HardFlavor::kCustom;
  std::uint64_t p = 2;
  std::uint32_t t = 2;
  std::uint32_t d = 1;
  std::size_t s = 1;

  std::size_t tree_size() const;
  std::size_t leaf_count() const;
  std::size_t source_count() const { return n / 4; }
  /// Throws InfeasibleParamsError listing every violated constraint.
  void validate() const;
};

/// Raw formula values before feasibility checks.
struct ShapeFormula {
  double p;
  double t;
  double d;
  double s;
};

/// p = max(2, ceil(1/eps)), t = ceil(log_p(n) / 2),
/// d = ceil(log(101 alpha) / (2 log(1-eps)) - 2), s = floor(n/4).
HardInstanceParams additive_params(std::size_t n, double eps, double alpha);

/// Logarithms base 2: p = ceil(log^2 n), t = ceil((delta/2) log n / log log n),
/// d = ceil(log_t(n^(1-2 delta))), s = ceil(n^(1-2 delta)).
HardInstanceParams multiplicative_params(std::size_t n, double eps, double delta);
/// Same formulas without building or validating anything; n may be huge.
ShapeFormula multiplicative_formula(double n, double delta);

HardInstanceParams custom_params(std::size_t n, double eps, std::uint64_t p,
                                 std::uint32_t t, std::uint32_t d, std::size_t s);

struct HardCheckpoint {
  /// Number of updates applied when the root-to-leaf path is complete.
  std::size_t update_index;
  /// Number of updates applied just before the round that completes it;
  /// absent for the leaf whose path exists from the start.
  std::optional<std::size_t> before_index;
  std::size_t leaf_ordinal;  // 1-based
  VertexId leaf;
  int parity;  // leaf_ordinal mod 2, the star center it feeds
};

struct HardLandmarks {
  VertexId root = 0;
  VertexId c0 = 0;
  VertexId c1 = 0;
  std::vector<VertexId> leaves;  // tree leaves in preorder
  std::vector<VertexId> sources;
  std::vector<VertexId> star0;
  std::vector<VertexId> star1;
  VertexId first_padding = 0;
};

/// Vertex layout: tree vertices in preorder from 0, then c0, c1, the
/// sources, the leaves of S0, the leaves of S1, and self-loop padding up to n.
struct InstanceSpec {
  HardInstanceParams params;
  std::vector<Edge> initial_edges;
  /// Single-copy arc insertions in round order.
  std::vector<Edge> updates;
  /// Update index at which each round starts, one entry per tree vertex
  /// in preorder (empty rounds included).
  std::vector<std::size_t> round_start;
  std::vector<HardCheckpoint> checkpoints;
  HardLandmarks landmarks;
  /// Parent of every tree vertex (the root maps to itself) and child index.
  std::vector<VertexId> parent;
  std::vector<std::uint32_t> child_index;

  DynamicMultigraph initial_graph() const;
};

InstanceSpec build_instance(const HardInstanceParams& params);

/// Sum over the leaves of star `which` (0 or 1) of pi_v - 1/n, the mass a
/// star receives beyond what its leaves generate themselves.
double star_excess(const InstanceSpec& spec, std::span<const double> pi, int which);

/// eps (1-eps)^(2d+2) / 4.
double leaf_pagerank_lower_bound(double eps, std::uint32_t d);

}  // namespace dynpr
