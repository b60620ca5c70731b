#include "dynpr/forward_push.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace dynpr {

ForwardPush::ForwardPush(const DynamicMultigraph& g, double gamma, double eps,
                         DeltaRule rule)
    : gamma_(gamma),
      eps_(eps),
      rule_(rule),
      estimate_(g.num_vertices(), 0.0),
      residual_(g.num_vertices()),
      queued_(g.num_vertices(), 0) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const double start = 1.0 / static_cast<double>(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.out_degree(v) == 0) {
      throw DanglingVertexError(fmt::format("vertex {} has no outgoing edge", v));
    }
    residual_[v].add(start);
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) enqueue_if_violating(g, v);
  restore(g);
}

std::vector<double> ForwardPush::residuals() const {
  std::vector<double> out(residual_.size());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = residual_[v].value();
  return out;
}

void ForwardPush::enqueue_if_violating(const DynamicMultigraph& g, VertexId u) {
  if (queued_[u]) return;
  if (std::abs(residual_[u].value()) > gamma_ * g.out_degree(u)) {
    queued_[u] = 1;
    queue_.push_back(u);
  }
}

void ForwardPush::push(const DynamicMultigraph& g, VertexId u) {
  const double mass = residual_[u].value();
  const std::uint32_t degree = g.out_degree(u);
  residual_[u].reset();
  estimate_[u] += eps_ * mass;
  const double unit = (1.0 - eps_) * mass / degree;
  for (const Neighbor& nb : g.out_neighbors(u)) {
    residual_[nb.vertex].add(unit * nb.multiplicity);
  }
  push_work_ += degree;
  ++push_count_;
}

void ForwardPush::restore(const DynamicMultigraph& g) {
  while (!queue_.empty()) {
    const VertexId u = queue_.front();
    queue_.pop_front();
    queued_[u] = 0;
    if (std::abs(residual_[u].value()) <= gamma_ * g.out_degree(u)) continue;
    push(g, u);
    for (const Neighbor& nb : g.out_neighbors(u)) enqueue_if_violating(g, nb.vertex);
  }
}

void ForwardPush::shift_for_new_arc(const DynamicMultigraph& g, VertexId u, VertexId v) {
  const std::uint32_t degree = g.out_degree(u);
  if (rule_ == DeltaRule::kUncorrected) {
    const double delta = estimate_[u] / ((1.0 - eps_) * degree);
    residual_[u].add(-delta);
    residual_[v].add(delta);
    return;
  }
  const std::uint32_t before = degree - 1;
  if (before == 0) {
    throw DanglingVertexError(fmt::format("vertex {} had no outgoing edge", u));
  }
  const double grow = estimate_[u] / before;
  estimate_[u] += grow;
  residual_[u].add(-grow / eps_);
  residual_[v].add((1.0 - eps_) * grow / eps_);
}

void ForwardPush::on_edge_inserted(const DynamicMultigraph& g, VertexId u, VertexId v) {
  if (g.multiplicity(u, v) == 0) {
    throw MissingEdgeError(fmt::format("edge ({}, {}) must be inserted first", u, v));
  }
  shift_for_new_arc(g, u, v);
  if (!g.directed() && u != v) shift_for_new_arc(g, v, u);
  enqueue_if_violating(g, u);
  enqueue_if_violating(g, v);
  restore(g);
}

void ForwardPush::drain(const DynamicMultigraph& g, double tolerance) {
  bool again = true;
  while (again) {
    again = false;
    for (VertexId u = 0; u < residual_.size(); ++u) {
      if (std::abs(residual_[u].value()) > tolerance) {
        push(g, u);
        again = true;
      }
    }
  }
}

bool ForwardPush::invariant_holds(const DynamicMultigraph& g) const {
  for (VertexId u = 0; u < residual_.size(); ++u) {
    if (std::abs(residual_[u].value()) > gamma_ * g.out_degree(u)) return false;
  }
  return true;
}

}  // namespace dynpr
