#include "dynpr/engine.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dynpr {

std::uint32_t default_walks_per_vertex(std::size_t n, double eps, double alpha) {
  const double raw = 9.0 * std::log(static_cast<double>(n)) / (eps * alpha * alpha);
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(raw)));
}

std::uint32_t default_truncation(double eps, double alpha) {
  const double raw = (2.0 / eps) * std::log(2.0 / (alpha * eps));
  return raw <= 0.0 ? 0 : static_cast<std::uint32_t>(std::ceil(raw));
}

void EngineConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (walks_per_vertex && *walks_per_vertex == 0) {
    throw std::invalid_argument("walks per vertex must be at least 1");
  }
}

std::uint32_t EngineConfig::resolved_walks_per_vertex(std::size_t n) const {
  return walks_per_vertex ? *walks_per_vertex : default_walks_per_vertex(n, eps, alpha);
}

std::uint32_t EngineConfig::resolved_truncation() const {
  return truncation ? *truncation : default_truncation(eps, alpha);
}

Engine::Engine(DynamicMultigraph graph, const EngineConfig& config)
    : graph_(std::move(graph)),
      config_(config),
      rng_(config.seed),
      store_(graph_.num_vertices(), graph_.mode()) {
  config_.validate();
  sample_initial_walks({});
}

Engine::Engine(DynamicMultigraph graph, const EngineConfig& config,
               std::span<const WalkSeed> seeds)
    : graph_(std::move(graph)),
      config_(config),
      rng_(config.seed),
      store_(graph_.num_vertices(), graph_.mode()) {
  config_.validate();
  if (seeds.empty()) throw std::invalid_argument("explicit walk population is empty");
  sample_initial_walks(seeds);
}

void Engine::extend_randomly(std::vector<VertexId>& path, std::size_t steps) {
  path.reserve(path.size() + steps);
  for (std::size_t k = 0; k < steps; ++k) {
    path.push_back(graph_.sample_out_step(path.back(), rng_));
  }
}

void Engine::sample_initial_walks(std::span<const WalkSeed> seeds) {
  auto add = [&](VertexId origin, std::uint32_t length) {
    Walk walk;
    walk.vertices.push_back(origin);
    extend_randomly(walk.vertices, length);
    store_.add_walk(std::move(walk));
  };
  if (!seeds.empty()) {
    for (const WalkSeed& seed : seeds) {
      graph_.out_degree(seed.origin);
      add(seed.origin, seed.length);
    }
  } else {
    const std::size_t n = graph_.num_vertices();
    const std::uint32_t per_vertex = config_.resolved_walks_per_vertex(n);
    const bool truncate = config_.mode == WalkMode::kAdditive;
    const std::uint32_t cap = config_.resolved_truncation();
    std::geometric_distribution<std::uint32_t> length_law(config_.eps);
    for (VertexId v = 0; v < n; ++v) {
      for (std::uint32_t k = 0; k < per_vertex; ++k) {
        const std::uint32_t length = length_law(rng_);
        if (truncate && length > cap) continue;
        add(v, length);
      }
    }
  }
  regenerations_.assign(store_.id_bound(), 0);
  stats_.peak_edge_load = store_.peak_edge_load();
}

double Engine::estimate(VertexId v) const {
  const std::size_t walks = store_.size();
  if (walks == 0) return 0.0;
  return static_cast<double>(store_.visits(v)) * config_.eps / static_cast<double>(walks);
}

std::vector<double> Engine::estimate_all() const {
  std::vector<double> out(graph_.num_vertices());
  for (VertexId v = 0; v < out.size(); ++v) out[v] = estimate(v);
  return out;
}

void Engine::note_update(std::chrono::steady_clock::time_point start) {
  const auto took = std::chrono::steady_clock::now() - start;
  ++stats_.updates;
  stats_.peak_edge_load = store_.peak_edge_load();
  stats_.update_time += took;
  stats_.max_update_time = std::max<std::chrono::nanoseconds>(stats_.max_update_time, took);
}

void Engine::collect_from(VertexId at, VertexId via, std::vector<RerouteRequest>& out) {
  const double p = 1.0 / graph_.out_degree(at);
  const std::size_t last = store_.max_positions();
  for (std::size_t t = 1; t <= last; ++t) {
    const std::size_t here = store_.count_at(at, t);
    if (here == 0) continue;
    const std::uint64_t picks = draw_binomial(here, p, rng_);
    for (std::uint64_t rank : draw_distinct_ranks(here, picks, rng_)) {
      out.push_back({store_.select_walk_at(at, t, rank), static_cast<std::uint32_t>(t), via});
    }
  }
}

std::vector<RerouteRequest> Engine::select_for_insertion(VertexId u, VertexId v) {
  if (graph_.multiplicity(u, v) == 0) {
    throw MissingEdgeError(fmt::format("edge ({}, {}) must be inserted first", u, v));
  }
  std::vector<RerouteRequest> requests;
  collect_from(u, v, requests);
  if (!graph_.directed() && u != v) collect_from(v, u, requests);
  return requests;
}

void Engine::reroute(std::span<const RerouteRequest> requests) {
  std::vector<RerouteRequest> order(requests.begin(), requests.end());
  std::sort(order.begin(), order.end(), [](const RerouteRequest& a, const RerouteRequest& b) {
    return a.walk != b.walk ? a.walk < b.walk : a.label < b.label;
  });
  std::vector<VertexId> tail;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && order[i].walk == order[i - 1].walk) continue;  // earliest label wins
    const RerouteRequest& req = order[i];
    const std::size_t vertices = store_.walk(req.walk).vertices.size();
    if (vertices <= req.label) continue;  // walk ends at the selected position
    tail.assign(1, req.via);
    extend_randomly(tail, vertices - req.label - 1);
    store_.replace_suffix(req.walk, req.label, tail);
    ++regenerations_[req.walk];
    ++stats_.regenerations;
  }
}

void Engine::insert_edge(VertexId u, VertexId v) {
  const auto start = std::chrono::steady_clock::now();
  graph_.insert_edge(u, v);
  const auto requests = select_for_insertion(u, v);
  reroute(requests);
  note_update(start);
}

template <typename Repair>
void Engine::delete_with(VertexId u, VertexId v, Repair&& repair) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint32_t copies = graph_.multiplicity(u, v);
  graph_.delete_edge(u, v);
  const bool undirected = !graph_.directed();
  std::bernoulli_distribution used_deleted_copy(1.0 / std::max<std::uint32_t>(copies, 1));
  for (WalkId id : store_.walks_on_edge(u, v)) {
    const auto& vs = store_.walk(id).vertices;
    std::size_t cut = 0;
    for (std::size_t pos = 1; pos < vs.size(); ++pos) {
      const VertexId a = vs[pos - 1];
      const VertexId b = vs[pos];
      const bool same_edge = (a == u && b == v) || (undirected && a == v && b == u);
      // With parallel copies each traversal used the removed one w.p. 1/copies.
      if (same_edge && (copies == 1 || used_deleted_copy(rng_))) {
        cut = pos;
        break;
      }
    }
    if (cut == 0) continue;
    repair(id, cut);
    ++regenerations_[id];
    ++stats_.regenerations;
  }
  note_update(start);
}

void Engine::delete_edge(VertexId u, VertexId v) {
  std::vector<VertexId> tail;
  delete_with(u, v, [&](WalkId id, std::size_t cut) {
    const Walk& walk = store_.walk(id);
    tail.assign(1, walk.vertices[cut - 1]);
    extend_randomly(tail, walk.vertices.size() - cut);
    store_.replace_suffix(id, cut, std::span<const VertexId>(tail).subspan(1));
  });
}

void Engine::naive_delete_edge(VertexId u, VertexId v) {
  std::vector<VertexId> tail;
  delete_with(u, v, [&](WalkId id, std::size_t) {
    const Walk& walk = store_.walk(id);
    tail.assign(1, walk.vertices.front());
    extend_randomly(tail, walk.vertices.size() - 1);
    store_.replace_suffix(id, 1, std::span<const VertexId>(tail).subspan(1));
  });
}

}  // namespace dynpr
