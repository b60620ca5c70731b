#include "dynpr/hard_instance.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace dynpr {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::uint32_t exponent) {
  std::uint64_t out = 1;
  for (std::uint32_t k = 0; k < exponent; ++k) {
    if (out > std::numeric_limits<std::uint32_t>::max() / base) {
      throw InfeasibleParamsError(
          fmt::format("p^{} overflows the multiplicity range for p = {}", exponent, base));
    }
    out *= base;
  }
  return out;
}

std::size_t saturating_tree_size(std::uint32_t t, std::uint32_t d, std::size_t cap) {
  std::size_t total = 0;
  std::size_t level = 1;
  for (std::uint32_t depth = 0; depth <= d; ++depth) {
    total += level;
    if (total > cap) return cap + 1;
    if (depth < d) {
      if (level > cap / std::max<std::uint32_t>(t, 1)) return cap + 1;
      level *= t;
    }
  }
  return total;
}

}  // namespace

std::size_t HardInstanceParams::tree_size() const {
  return saturating_tree_size(t, d, std::numeric_limits<std::size_t>::max() / 2);
}

std::size_t HardInstanceParams::leaf_count() const {
  std::size_t leaves = 1;
  for (std::uint32_t k = 0; k < d; ++k) leaves *= t;
  return leaves;
}

void HardInstanceParams::validate() const {
  std::vector<std::string> problems;
  if (flavor != HardFlavor::kCustom && !(eps > 0.01 && eps < 0.99)) {
    problems.push_back(fmt::format("eps = {} outside (0.01, 0.99)", eps));
  }
  if (!(eps > 0.0 && eps < 1.0)) problems.push_back(fmt::format("eps = {} outside (0, 1)", eps));
  if (p < 2) problems.push_back(fmt::format("p = {} < 2", p));
  if (static_cast<double>(p) * eps < 1.0 - 1e-12) {
    problems.push_back(fmt::format("p = {} < 1/eps = {}", p, 1.0 / eps));
  }
  if (t < 1) problems.push_back("t = 0");
  if (flavor == HardFlavor::kMultiplicative && t < 2) {
    problems.push_back(fmt::format("t = {} < 2", t));
  }
  if (d < 1) problems.push_back(fmt::format("d = {} < 1", d));
  if (s < 1) problems.push_back("s = 0");
  const std::size_t tree = saturating_tree_size(t, d, n);
  const std::size_t needed = tree + n / 4 + 2 * (s + 1);
  if (tree > n || needed > n) {
    problems.push_back(fmt::format(
        "|H| + n/4 + 2(s+1) = {} exceeds n = {}",
        tree > n ? std::string("more than n") : std::to_string(needed), n));
  }
  if (problems.empty()) return;
  std::string message = "infeasible hard-instance parameters:";
  for (const auto& problem : problems) message += " " + problem + ";";
  if (flavor == HardFlavor::kMultiplicative) message += " use the custom flavor at this size";
  throw InfeasibleParamsError(message);
}

HardInstanceParams additive_params(std::size_t n, double eps, double alpha) {
  if (!(alpha > 0.0)) throw InfeasibleParamsError("alpha must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw InfeasibleParamsError("eps must lie in (0, 1)");
  HardInstanceParams out;
  out.n = n;
  out.eps = eps;
  out.flavor = HardFlavor::kAdditive;
  out.p = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(1.0 / eps - 1e-12)));
  const double half_log = 0.5 * std::log(static_cast<double>(n)) /
                          std::log(static_cast<double>(out.p));
  out.t = static_cast<std::uint32_t>(std::ceil(half_log - 1e-12));
  const double raw_depth = std::log(101.0 * alpha) / (2.0 * std::log(1.0 - eps)) - 2.0;
  if (!(raw_depth > 0.0)) {
    throw InfeasibleParamsError(fmt::format(
        "depth formula gives {} <= 0 for eps = {}, alpha = {}: need 101 alpha < (1-eps)^4",
        raw_depth, eps, alpha));
  }
  out.d = static_cast<std::uint32_t>(std::ceil(raw_depth));
  out.s = n / 4;
  out.validate();
  return out;
}

ShapeFormula multiplicative_formula(double n, double delta) {
  const double log_n = std::log2(n);
  ShapeFormula out;
  out.p = std::ceil(log_n * log_n);
  out.t = std::ceil(0.5 * delta * log_n / std::log2(log_n));
  const double star = std::pow(n, 1.0 - 2.0 * delta);
  out.d = out.t >= 2 ? std::ceil(std::log(star) / std::log(out.t) - 1e-12) : 0.0;
  out.s = std::ceil(star - 1e-9);
  return out;
}

HardInstanceParams multiplicative_params(std::size_t n, double eps, double delta) {
  const ShapeFormula f = multiplicative_formula(static_cast<double>(n), delta);
  if (f.t < 2 || f.d < 1) {
    throw InfeasibleParamsError(fmt::format(
        "infeasible hard-instance parameters: t = {}, d = {} at n = {}, delta = {}; "
        "need t >= 2 and d >= 1, use the custom flavor at this size",
        f.t, f.d, n, delta));
  }
  HardInstanceParams out;
  out.n = n;
  out.eps = eps;
  out.flavor = HardFlavor::kMultiplicative;
  out.p = static_cast<std::uint64_t>(f.p);
  out.t = static_cast<std::uint32_t>(f.t);
  out.d = static_cast<std::uint32_t>(f.d);
  out.s = static_cast<std::size_t>(f.s);
  out.validate();
  return out;
}

HardInstanceParams custom_params(std::size_t n, double eps, std::uint64_t p,
                                 std::uint32_t t, std::uint32_t d, std::size_t s) {
  HardInstanceParams out;
  out.n = n;
  out.eps = eps;
  out.flavor = HardFlavor::kCustom;
  out.p = p;
  out.t = t;
  out.d = d;
  out.s = s;
  out.validate();
  return out;
}

double leaf_pagerank_lower_bound(double eps, std::uint32_t d) {
  return eps * std::pow(1.0 - eps, 2.0 * d + 2.0) / 4.0;
}

double star_excess(const InstanceSpec& spec, std::span<const double> pi, int which) {
  const auto& leaves = which == 0 ? spec.landmarks.star0 : spec.landmarks.star1;
  const double own = 1.0 / static_cast<double>(spec.params.n);
  double sum = 0.0;
  for (VertexId v : leaves) sum += pi[v] - own;
  return sum;
}

InstanceSpec build_instance(const HardInstanceParams& params) {
  params.validate();
  checked_power(params.p, params.t - 1);  // largest multiplicity must fit

  InstanceSpec spec;
  spec.params = params;
  const std::size_t tree = params.tree_size();
  spec.parent.resize(tree);
  spec.child_index.resize(tree);

  // Preorder numbering with an explicit stack of (parent, child index, depth).
  struct Frame {
    VertexId parent;
    std::uint32_t child;
    std::uint32_t depth;
  };
  std::vector<Frame> stack{{0, 0, 0}};
  VertexId next = 0;
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const VertexId id = next++;
    spec.parent[id] = f.depth == 0 ? id : f.parent;
    spec.child_index[id] = f.child;
    if (f.depth == params.d) {
      spec.landmarks.leaves.push_back(id);
      continue;
    }
    for (std::uint32_t k = params.t; k-- > 0;) stack.push_back({id, k, f.depth + 1});
  }

  HardLandmarks& lm = spec.landmarks;
  lm.root = 0;
  lm.c0 = static_cast<VertexId>(tree);
  lm.c1 = static_cast<VertexId>(tree + 1);
  VertexId cursor = static_cast<VertexId>(tree + 2);
  for (std::size_t k = 0; k < params.source_count(); ++k) lm.sources.push_back(cursor++);
  for (std::size_t k = 0; k < params.s; ++k) lm.star0.push_back(cursor++);
  for (std::size_t k = 0; k < params.s; ++k) lm.star1.push_back(cursor++);
  lm.first_padding = cursor;

  auto& edges = spec.initial_edges;
  for (VertexId v = 1; v < tree; ++v) {
    if (spec.child_index[v] == 0) edges.push_back({spec.parent[v], v, 1});
  }
  for (VertexId src : lm.sources) edges.push_back({src, lm.root, 1});
  for (std::size_t i = 1; i <= lm.leaves.size(); ++i) {
    edges.push_back({lm.leaves[i - 1], i % 2 == 0 ? lm.c0 : lm.c1, 1});
  }
  for (VertexId leaf : lm.star0) edges.push_back({lm.c0, leaf, 1});
  for (VertexId leaf : lm.star1) edges.push_back({lm.c1, leaf, 1});
  for (VertexId leaf : lm.star0) edges.push_back({leaf, leaf, 1});
  for (VertexId leaf : lm.star1) edges.push_back({leaf, leaf, 1});
  for (VertexId v = lm.first_padding; v < params.n; ++v) edges.push_back({v, v, 1});

  spec.round_start.resize(tree);
  for (VertexId v = 0; v < tree; ++v) {
    spec.round_start[v] = spec.updates.size();
    if (v == lm.root || spec.child_index[v] == 0) continue;
    const std::uint64_t copies = checked_power(params.p, spec.child_index[v]);
    for (std::uint64_t k = 0; k < copies; ++k) spec.updates.push_back({spec.parent[v], v, 1});
  }
  auto round_end = [&](VertexId v) {
    return v + 1 < tree ? spec.round_start[v + 1] : spec.updates.size();
  };

  for (std::size_t i = 1; i <= lm.leaves.size(); ++i) {
    const VertexId leaf = lm.leaves[i - 1];
    // The last arc on the root path to arrive belongs to the deepest
    // non-leftmost vertex, which has the largest preorder id on the path.
    std::optional<VertexId> last;
    for (VertexId v = leaf; v != lm.root; v = spec.parent[v]) {
      if (spec.child_index[v] != 0) {
        last = v;
        break;
      }
    }
    HardCheckpoint cp;
    cp.leaf_ordinal = i;
    cp.leaf = leaf;
    cp.parity = static_cast<int>(i % 2);
    if (last) {
      cp.update_index = round_end(*last);
      cp.before_index = spec.round_start[*last];
    } else {
      cp.update_index = 0;
    }
    spec.checkpoints.push_back(cp);
  }
  return spec;
}

DynamicMultigraph InstanceSpec::initial_graph() const {
  DynamicMultigraph g(params.n, GraphMode::kDirected, SelfLoops::kNone);
  for (const Edge& e : initial_edges) {
    for (std::uint32_t k = 0; k < e.multiplicity; ++k) g.insert_edge(e.from, e.to);
  }
  return g;
}

}  // namespace dynpr
