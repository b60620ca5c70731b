#include "dynpr/walk_store.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

namespace dynpr {

WalkStore::WalkStore(std::size_t num_vertices, GraphMode mode)
    : mode_(mode), positions_(num_vertices), visits_(num_vertices, 0) {}

std::uint64_t WalkStore::edge_key(VertexId u, VertexId v) const {
  if (mode_ == GraphMode::kUndirected && v < u) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

void WalkStore::check_id(WalkId id) const {
  if (!contains(id)) throw std::out_of_range(fmt::format("no walk with id {}", id));
}

bool WalkStore::contains(WalkId id) const { return id < alive_.size() && alive_[id]; }

const Walk& WalkStore::walk(WalkId id) const {
  check_id(id);
  return walks_[id];
}

void WalkStore::index_range(WalkId id, const Walk& walk, std::size_t first_position) {
  const auto& vs = walk.vertices;
  for (std::size_t pos = first_position; pos <= vs.size(); ++pos) {
    const VertexId v = vs[pos - 1];
    auto& slots = positions_.at(v);
    if (slots.size() < pos) slots.resize(pos);
    slots[pos - 1].insert(id);
    ++visits_[v];
    ++total_visits_;
  }
  // Arc k joins positions k and k+1; the first touched arc ends at first_position.
  for (std::size_t pos = std::max<std::size_t>(first_position, 2); pos <= vs.size(); ++pos) {
    auto& bucket = edges_[edge_key(vs[pos - 2], vs[pos - 1])];
    ++bucket[id];
    peak_edge_load_ = std::max(peak_edge_load_, bucket.size());
  }
}

void WalkStore::unindex_range(WalkId id, const Walk& walk, std::size_t first_position) {
  const auto& vs = walk.vertices;
  for (std::size_t pos = first_position; pos <= vs.size(); ++pos) {
    const VertexId v = vs[pos - 1];
    positions_[v][pos - 1].erase(id);
    --visits_[v];
    --total_visits_;
  }
  for (std::size_t pos = std::max<std::size_t>(first_position, 2); pos <= vs.size(); ++pos) {
    auto bucket_it = edges_.find(edge_key(vs[pos - 2], vs[pos - 1]));
    auto entry = bucket_it->second.find(id);
    if (--entry->second == 0) bucket_it->second.erase(entry);
    if (bucket_it->second.empty()) edges_.erase(bucket_it);
  }
}

WalkId WalkStore::add_walk(Walk walk) {
  if (walk.vertices.empty()) throw std::invalid_argument("walk needs an origin");
  for (VertexId v : walk.vertices) {
    if (v >= positions_.size()) {
      throw InvalidVertexError(fmt::format("walk vertex {} out of range", v));
    }
  }
  const auto id = static_cast<WalkId>(walks_.size());
  walks_.push_back(std::move(walk));
  alive_.push_back(1);
  ++live_;
  const std::size_t vertices = walks_.back().vertices.size();
  if (walks_by_size_.size() <= vertices) walks_by_size_.resize(vertices + 1, 0);
  ++walks_by_size_[vertices];
  index_range(id, walks_.back(), 1);
  return id;
}

Walk WalkStore::remove_walk(WalkId id) {
  check_id(id);
  unindex_range(id, walks_[id], 1);
  --walks_by_size_[walks_[id].vertices.size()];
  alive_[id] = 0;
  --live_;
  return std::exchange(walks_[id], Walk{});
}

void WalkStore::replace_suffix(WalkId id, std::size_t keep, std::span<const VertexId> tail) {
  check_id(id);
  Walk& w = walks_[id];
  if (keep == 0 || keep > w.vertices.size()) {
    throw std::out_of_range("kept prefix must cover 1..vertex count");
  }
  for (VertexId v : tail) {
    if (v >= positions_.size()) {
      throw InvalidVertexError(fmt::format("walk vertex {} out of range", v));
    }
  }
  // Positions keep+1.. change, and so does arc (keep, keep+1).
  unindex_range(id, w, keep + 1);
  --walks_by_size_[w.vertices.size()];
  w.vertices.resize(keep);
  w.vertices.insert(w.vertices.end(), tail.begin(), tail.end());
  if (walks_by_size_.size() <= w.vertices.size()) walks_by_size_.resize(w.vertices.size() + 1, 0);
  ++walks_by_size_[w.vertices.size()];
  index_range(id, w, keep + 1);
}

std::size_t WalkStore::count_at(VertexId v, std::size_t position) const {
  const auto& slots = positions_.at(v);
  if (position == 0 || position > slots.size()) return 0;
  return slots[position - 1].size();
}

WalkId WalkStore::select_walk_at(VertexId v, std::size_t position, std::size_t rank) const {
  const auto& slots = positions_.at(v);
  if (position == 0 || position > slots.size()) {
    throw std::out_of_range(fmt::format("no walks at ({}, {})", v, position));
  }
  return slots[position - 1].select(rank);
}

std::vector<WalkId> WalkStore::walks_on_edge(VertexId u, VertexId v) const {
  std::vector<WalkId> ids;
  auto it = edges_.find(edge_key(u, v));
  if (it != edges_.end()) {
    ids.reserve(it->second.size());
    for (const auto& [id, count] : it->second) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
  }
  return ids;
}

std::uint32_t WalkStore::traversals(WalkId id, VertexId u, VertexId v) const {
  auto it = edges_.find(edge_key(u, v));
  if (it == edges_.end()) return 0;
  auto entry = it->second.find(id);
  return entry == it->second.end() ? 0 : entry->second;
}

std::size_t WalkStore::edge_load(VertexId u, VertexId v) const {
  auto it = edges_.find(edge_key(u, v));
  return it == edges_.end() ? 0 : it->second.size();
}

std::size_t WalkStore::max_edge_load() const {
  std::size_t best = 0;
  for (const auto& [key, bucket] : edges_) best = std::max(best, bucket.size());
  return best;
}

std::size_t WalkStore::max_positions() const {
  for (std::size_t k = walks_by_size_.size(); k-- > 0;) {
    if (walks_by_size_[k] != 0) return k;
  }
  return 0;
}

void WalkStore::dump(std::ostream& out) const {
  for (WalkId id = 0; id < walks_.size(); ++id) {
    if (!alive_[id]) continue;
    out << id << ':';
    for (VertexId v : walks_[id].vertices) out << ' ' << v;
    out << '\n';
  }
}

std::string WalkStore::audit() const {
  std::map<std::pair<VertexId, std::size_t>, std::set<WalkId>> expect_positions;
  std::map<std::uint64_t, std::map<WalkId, std::uint32_t>> expect_edges;
  std::vector<std::uint64_t> expect_visits(visits_.size(), 0);
  std::uint64_t expect_total = 0;
  std::size_t expect_live = 0;
  for (WalkId id = 0; id < walks_.size(); ++id) {
    if (!alive_[id]) continue;
    ++expect_live;
    const auto& vs = walks_[id].vertices;
    for (std::size_t pos = 1; pos <= vs.size(); ++pos) {
      expect_positions[{vs[pos - 1], pos}].insert(id);
      ++expect_visits[vs[pos - 1]];
      ++expect_total;
      if (pos >= 2) ++expect_edges[edge_key(vs[pos - 2], vs[pos - 1])][id];
    }
  }
  if (expect_live != live_) return fmt::format("live count {} != {}", live_, expect_live);
  if (expect_total != total_visits_) return "total visit counter drifted";
  for (VertexId v = 0; v < visits_.size(); ++v) {
    if (visits_[v] != expect_visits[v]) {
      return fmt::format("X({}) = {} but walks visit it {} times", v, visits_[v], expect_visits[v]);
    }
    for (std::size_t pos = 1; pos <= positions_[v].size(); ++pos) {
      const auto& have = positions_[v][pos - 1];
      auto it = expect_positions.find({v, pos});
      const std::size_t want = it == expect_positions.end() ? 0 : it->second.size();
      if (have.size() != want) {
        return fmt::format("|S({}, {})| = {} but {} walks are there", v, pos, have.size(), want);
      }
      if (want && !std::equal(have.begin(), have.end(), it->second.begin())) {
        return fmt::format("S({}, {}) holds the wrong ids", v, pos);
      }
    }
  }
  for (const auto& [key, ids] : expect_positions) {
    if (count_at(key.first, key.second) != ids.size()) {
      return fmt::format("S({}, {}) missing", key.first, key.second);
    }
  }
  if (expect_edges.size() != edges_.size()) {
    return fmt::format("{} edge buckets but {} edges are used", edges_.size(), expect_edges.size());
  }
  for (const auto& [key, want] : expect_edges) {
    auto it = edges_.find(key);
    if (it == edges_.end() || it->second.size() != want.size()) {
      return fmt::format("edge bucket {}:{} has the wrong size", key >> 32, key & 0xffffffffu);
    }
    for (const auto& [id, count] : want) {
      auto entry = it->second.find(id);
      if (entry == it->second.end() || entry->second != count) {
        return fmt::format("walk {} traversal count wrong on {}:{}", id, key >> 32,
                           key & 0xffffffffu);
      }
    }
  }
  std::vector<std::size_t> sizes(walks_by_size_.size(), 0);
  for (WalkId id = 0; id < walks_.size(); ++id) {
    if (alive_[id]) ++sizes[walks_[id].vertices.size()];
  }
  if (sizes != walks_by_size_) return "walk length histogram drifted";
  return {};
}

}  // namespace dynpr
