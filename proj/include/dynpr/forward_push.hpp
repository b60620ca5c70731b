#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "dynpr/graph.hpp"

namespace dynpr {

/// How an arc insertion (u, v) moves mass before pushes resume.
enum class DeltaRule {
  /// Keeps p + R * Pi equal to PageRank exactly (Pi the matrix of
  /// eps-discounted visit distributions): with d the old out-degree of u,
  /// p_u grows by p_u/d, R_u drops by p_u/(eps d), R_v gains
  /// (1-eps) p_u/(eps d).
  kExact,
  /// Moves Delta = p_u / ((1-eps) d_new) from R_u to R_v and leaves p_u
  /// alone. Does not preserve the invariant; kept for the calibration test.
  kUncorrected,
};

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }
  void reset() { sum_ = carry_ = 0.0; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Dynamic ForwardPush for global PageRank under arc insertions.
///
/// Each vertex carries an estimate p_v and a signed residual R_v; after
/// every public call |R_u| <= gamma * out_degree(u) for all u, so the L1
/// error of the estimates is at most gamma * m.
class ForwardPush {
 public:
  ForwardPush(const DynamicMultigraph& g, double gamma, double eps,
              DeltaRule rule = DeltaRule::kExact);

  double gamma() const { return gamma_; }
  double eps() const { return eps_; }

  double estimate(VertexId v) const { return estimate_.at(v); }
  const std::vector<double>& estimates() const { return estimate_; }
  double residual(VertexId v) const { return residual_.at(v).value(); }
  std::vector<double> residuals() const;

  /// Sum of out_degree(u) over all executed pushes.
  std::uint64_t push_work() const { return push_work_; }
  std::uint64_t push_count() const { return push_count_; }

  /// Pushes u once, whatever its residual.
  void push(const DynamicMultigraph& g, VertexId u);

  /// To be called after (u, v) has been inserted into g.
  void on_edge_inserted(const DynamicMultigraph& g, VertexId u, VertexId v);

  /// Pushes until every residual is within `tolerance` in absolute value.
  void drain(const DynamicMultigraph& g, double tolerance);

  bool invariant_holds(const DynamicMultigraph& g) const;

 private:
  void shift_for_new_arc(const DynamicMultigraph& g, VertexId u, VertexId v);
  void enqueue_if_violating(const DynamicMultigraph& g, VertexId u);
  void restore(const DynamicMultigraph& g);

  double gamma_;
  double eps_;
  DeltaRule rule_;
  std::vector<double> estimate_;
  std::vector<CompensatedSum> residual_;
  std::deque<VertexId> queue_;
  std::vector<char> queued_;
  std::uint64_t push_work_ = 0;
  std::uint64_t push_count_ = 0;
};

}  // namespace dynpr
