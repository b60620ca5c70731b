#include "dynpr/graph.hpp"

#include <fmt/format.h>

#include <istream>
#include <ostream>

#include "text_util.hpp"

namespace dynpr {

std::string to_string(GraphMode mode) {
  return mode == GraphMode::kDirected ? "directed" : "undirected";
}

GraphMode parse_graph_mode(const std::string& text) {
  if (text == "directed") return GraphMode::kDirected;
  if (text == "undirected") return GraphMode::kUndirected;
  throw std::invalid_argument("unknown graph mode '" + text + "'");
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(fmt::format("line {}: {}", line, what)), line_(line) {}

DynamicMultigraph::DynamicMultigraph(std::size_t n, GraphMode mode, SelfLoops loops)
    : mode_(mode), loops_(loops), adjacency_(n), slot_of_(n), out_degree_(n, 0) {
  if (n == 0) throw std::invalid_argument("graph must have at least one vertex");
  if (n > std::size_t{UINT32_MAX}) throw std::invalid_argument("too many vertices");
  if (loops_ == SelfLoops::kProtected) {
    for (VertexId v = 0; v < n; ++v) {
      bump(v, v);
      ++out_degree_[v];
      ++total_degree_;
    }
  }
}

void DynamicMultigraph::check_vertex(VertexId v) const {
  if (v >= adjacency_.size()) {
    throw InvalidVertexError(
        fmt::format("vertex {} out of range [0, {})", v, adjacency_.size()));
  }
}

void DynamicMultigraph::throw_dangling(VertexId u) const {
  throw DanglingVertexError(fmt::format("vertex {} has no outgoing edge", u));
}

std::uint32_t DynamicMultigraph::out_degree(VertexId u) const {
  check_vertex(u);
  return out_degree_[u];
}

std::uint32_t DynamicMultigraph::multiplicity(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& slots = slot_of_[u];
  auto it = slots.find(v);
  return it == slots.end() ? 0 : adjacency_[u][it->second].multiplicity;
}

const std::vector<Neighbor>& DynamicMultigraph::out_neighbors(VertexId u) const {
  check_vertex(u);
  return adjacency_[u];
}

std::uint32_t DynamicMultigraph::bump(VertexId u, VertexId v) {
  auto [it, fresh] = slot_of_[u].try_emplace(v, adjacency_[u].size());
  if (fresh) {
    adjacency_[u].push_back({v, 1});
    return 1;
  }
  return ++adjacency_[u][it->second].multiplicity;
}

std::uint32_t DynamicMultigraph::drop(VertexId u, VertexId v) {
  auto& list = adjacency_[u];
  auto& slots = slot_of_[u];
  const std::uint32_t slot = slots.at(v);
  const std::uint32_t left = --list[slot].multiplicity;
  if (left == 0) {
    // Swap-remove keeps the list dense; the moved neighbor gets a new slot.
    if (slot + 1 != list.size()) {
      list[slot] = list.back();
      slots[list[slot].vertex] = slot;
    }
    list.pop_back();
    slots.erase(v);
  }
  return left;
}

std::uint32_t DynamicMultigraph::protected_copies(VertexId u, VertexId v) const {
  return (loops_ == SelfLoops::kProtected && u == v) ? 1 : 0;
}

std::uint32_t DynamicMultigraph::insert_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  const std::uint32_t mult = bump(u, v);
  ++out_degree_[u];
  ++total_degree_;
  if (!directed() && u != v) {
    bump(v, u);
    ++out_degree_[v];
    ++total_degree_;
  }
  return mult;
}

bool DynamicMultigraph::deletable(VertexId u, VertexId v) const {
  return multiplicity(u, v) > protected_copies(u, v);
}

std::uint32_t DynamicMultigraph::delete_edge(VertexId u, VertexId v) {
  const std::uint32_t mult = multiplicity(u, v);
  if (mult == 0) {
    throw MissingEdgeError(fmt::format("edge ({}, {}) is not present", u, v));
  }
  if (mult <= protected_copies(u, v)) {
    throw ForbiddenDeletionError(
        fmt::format("self-loop ({}, {}) is protected", u, v));
  }
  const std::uint32_t left = drop(u, v);
  --out_degree_[u];
  --total_degree_;
  if (!directed() && u != v) {
    drop(v, u);
    --out_degree_[v];
    --total_degree_;
  }
  return left;
}

std::vector<Edge> DynamicMultigraph::arcs() const {
  std::vector<Edge> out;
  for (VertexId u = 0; u < adjacency_.size(); ++u) {
    for (const Neighbor& nb : adjacency_[u]) out.push_back({u, nb.vertex, nb.multiplicity});
  }
  return out;
}

std::string DynamicMultigraph::audit() const {
  std::uint64_t total = 0;
  for (VertexId u = 0; u < adjacency_.size(); ++u) {
    std::uint64_t sum = 0;
    for (const Neighbor& nb : adjacency_[u]) {
      if (nb.multiplicity == 0) return fmt::format("zero multiplicity stored at ({}, {})", u, nb.vertex);
      sum += nb.multiplicity;
      if (!directed() && multiplicity(nb.vertex, u) != nb.multiplicity) {
        return fmt::format("asymmetric multiplicity on {{{}, {}}}", u, nb.vertex);
      }
    }
    if (sum != out_degree_[u]) {
      return fmt::format("out_degree({}) = {} but adjacency sums to {}", u,
                         out_degree_[u], sum);
    }
    if (loops_ == SelfLoops::kProtected && multiplicity(u, u) == 0) {
      return fmt::format("protected self-loop missing at {}", u);
    }
    total += sum;
  }
  if (total != total_degree_) return "total degree counter drifted";
  return {};
}

DynamicMultigraph read_edge_list(std::istream& in) {
  std::optional<DynamicMultigraph> graph;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    if (!graph) {
      if (tokens.size() != 4 && tokens.size() != 6) {
        throw ParseError(line_no, "expected header 'n <count> mode <directed|undirected>'");
      }
      if (tokens[0] != "n" || tokens[2] != "mode") {
        throw ParseError(line_no, "malformed header");
      }
      auto n = detail::parse_int<std::size_t>(tokens[1], line_no, "vertex count");
      GraphMode mode;
      try {
        mode = parse_graph_mode(tokens[3]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
      SelfLoops loops = SelfLoops::kProtected;
      if (tokens.size() == 6) {
        if (tokens[4] != "selfloops" || tokens[5] != "none") {
          throw ParseError(line_no, "expected 'selfloops none'");
        }
        loops = SelfLoops::kNone;
      }
      if (n == 0) throw ParseError(line_no, "vertex count must be positive");
      graph.emplace(n, mode, loops);
      continue;
    }
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw ParseError(line_no, "expected 'u v [mult]'");
    }
    auto u = detail::parse_int<VertexId>(tokens[0], line_no, "vertex");
    auto v = detail::parse_int<VertexId>(tokens[1], line_no, "vertex");
    std::uint32_t mult = 1;
    if (tokens.size() == 3) mult = detail::parse_int<std::uint32_t>(tokens[2], line_no, "multiplicity");
    if (u >= graph->num_vertices() || v >= graph->num_vertices()) {
      throw ParseError(line_no, fmt::format("vertex out of range in edge ({}, {})", u, v));
    }
    for (std::uint32_t k = 0; k < mult; ++k) graph->insert_edge(u, v);
  }
  if (!graph) throw ParseError(line_no, "missing header");
  return std::move(*graph);
}

void write_edge_list(std::ostream& out, const DynamicMultigraph& g) {
  out << "n " << g.num_vertices() << " mode " << to_string(g.mode());
  if (g.self_loops() == SelfLoops::kNone) out << " selfloops none";
  out << '\n';
  for (const Edge& arc : g.arcs()) {
    if (!g.directed() && arc.from > arc.to) continue;
    std::uint32_t mult = arc.multiplicity;
    if (arc.from == arc.to && g.self_loops() == SelfLoops::kProtected) --mult;
    if (mult == 0) continue;
    out << arc.from << ' ' << arc.to;
    if (mult != 1) out << ' ' << mult;
    out << '\n';
  }
}

}  // namespace dynpr
