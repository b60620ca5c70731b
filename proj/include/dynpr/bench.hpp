#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynpr/graph.hpp"
#include "dynpr/stream.hpp"

namespace dynpr {

enum class EngineKind { kWalksMult, kWalksAdd, kForwardPush, kOracleOnly };

std::string to_string(EngineKind kind);
EngineKind parse_engine_kind(const std::string& text);

class UnsupportedUpdateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  EngineKind engine = EngineKind::kWalksMult;
  double alpha = 0.5;
  std::uint64_t seed = 1;
  std::uint32_t trials = 1;
  bool naive_delete = false;
  std::optional<std::uint32_t> walks_per_vertex;
  std::optional<std::uint32_t> truncation;
  /// ForwardPush threshold; defaults to alpha / m with m the total degree
  /// after all insertions of the stream.
  std::optional<double> gamma;
  /// Adds the informational elapsed_ms_mean column. Off by default so that
  /// reports are byte-for-byte reproducible.
  bool timing = false;
  /// Optional sinks for trial 0: `label,vertex,estimate,pagerank` rows at
  /// each checkpoint, and the final walk set.
  std::ostream* estimates_out = nullptr;
  std::ostream* walks_out = nullptr;
};

/// Seed of trial k derived from the base seed.
std::uint64_t trial_seed(std::uint64_t base, std::uint32_t trial);

struct Summary {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  double max = 0.0;
};
Summary summarize(const std::vector<double>& values);

/// One row per checkpoint; statistics are taken over trials.
struct ReportRow {
  std::string label;
  std::size_t update_index = 0;
  std::uint32_t trials = 0;
  Summary l1_error;
  /// max_v |estimate_v / pi_v - 1|.
  Summary max_rel_dev;
  /// Vertex attaining the largest relative deviation over all trials.
  VertexId worst_vertex = 0;
  Summary regenerations;  // cumulative
  Summary max_edge_load;  // peak so far
  Summary push_work;      // cumulative
  std::optional<double> elapsed_ms_mean;
};

struct Report {
  std::vector<ReportRow> rows;
  bool timing = false;
};

/// Column order of the CSV report.
std::vector<std::string> report_columns(bool timing);
void write_report(std::ostream& out, const Report& report);
Report read_report(std::istream& in);

/// Replays the stream from `initial` (which must match the header) and
/// compares against power iteration at each checkpoint. Deterministic in
/// (stream, initial, options) apart from the timing column.
Report run_stream(const UpdateStream& stream, const DynamicMultigraph& initial,
                  const RunOptions& options);

enum class ToleranceMode { kAdditive, kMultiplicative };

struct Verdict {
  bool pass = true;
  std::vector<std::string> lines;
};

/// Additive: l1_error_max <= 5 alpha / (1 - eps) on every row.
/// Multiplicative: max_rel_dev_max <= alpha on every row.
Verdict verify_at_checkpoints(const Report& report, ToleranceMode mode, double alpha,
                              double eps);

struct BiasDemoResult {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double frequency() const { return trials ? static_cast<double>(hits) / trials : 0.0; }
};

/// Undirected path 0-1-2-3-4, one walk of length 2 from vertex 2, delete
/// {3, 4}, count how often position 2 holds vertex 3. A fresh walk on the
/// final graph gives 1/2; regrowing affected walks from the origin gives 3/8.
BiasDemoResult run_bias_demo(std::uint64_t trials, std::uint64_t seed, bool naive);

}  // namespace dynpr
