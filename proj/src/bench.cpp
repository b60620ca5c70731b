#include "dynpr/bench.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "dynpr/engine.hpp"
#include "dynpr/forward_push.hpp"
#include "dynpr/oracle.hpp"
#include "text_util.hpp"

namespace dynpr {

namespace {

constexpr std::size_t kOracleVertexLimit = 100000;

struct TrialSample {
  double l1_error = 0.0;
  double max_rel_dev = 0.0;
  VertexId worst_vertex = 0;
  double regenerations = 0.0;
  double max_edge_load = 0.0;
  double push_work = 0.0;
  double elapsed_ms = 0.0;
};

struct Snapshot {
  std::string label;
  std::size_t update_index;
  std::vector<double> pagerank;
};

std::vector<Snapshot> oracle_snapshots(const UpdateStream& stream, DynamicMultigraph g) {
  if (stream.checkpoint_count() > 0 && stream.n > kOracleVertexLimit) {
    throw TooLargeError(fmt::format("oracle checkpoints need n <= {}, stream has n = {}",
                                    kOracleVertexLimit, stream.n));
  }
  std::vector<Snapshot> out;
  std::size_t applied = 0;
  for (const Update& rec : stream.records) {
    switch (rec.kind) {
      case UpdateKind::kInsert:
        g.insert_edge(rec.u, rec.v);
        ++applied;
        break;
      case UpdateKind::kDelete:
        g.delete_edge(rec.u, rec.v);
        ++applied;
        break;
      case UpdateKind::kCheckpoint:
        out.push_back({rec.label, applied, power_iteration(g, stream.eps)});
        break;
    }
  }
  return out;
}

void measure(const std::vector<double>& estimate, const std::vector<double>& pagerank,
             TrialSample& sample) {
  sample.l1_error = l1_distance(estimate, pagerank);
  sample.max_rel_dev = -1.0;
  for (VertexId v = 0; v < pagerank.size(); ++v) {
    const double dev = std::abs(estimate[v] / pagerank[v] - 1.0);
    if (dev > sample.max_rel_dev) {
      sample.max_rel_dev = dev;
      sample.worst_vertex = v;
    }
  }
}

void write_estimates(std::ostream& out, const Snapshot& snap, const std::vector<double>& est) {
  for (VertexId v = 0; v < est.size(); ++v) {
    fmt::print(out, "{},{},{},{}\n", snap.label, v, est[v], snap.pagerank[v]);
  }
}

std::uint64_t total_degree_after_insertions(const UpdateStream& stream,
                                            const DynamicMultigraph& initial) {
  std::uint64_t m = initial.total_degree();
  for (const Update& rec : stream.records) {
    if (rec.kind != UpdateKind::kInsert) continue;
    m += (stream.mode == GraphMode::kUndirected && rec.u != rec.v) ? 2 : 1;
  }
  return m;
}

using Clock = std::chrono::steady_clock;

double to_ms(Clock::duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

std::vector<TrialSample> run_trial(const UpdateStream& stream, const DynamicMultigraph& initial,
                                   const RunOptions& options, double gamma,
                                   const std::vector<Snapshot>& snapshots, std::uint32_t trial) {
  std::vector<TrialSample> samples;
  samples.reserve(snapshots.size());
  std::ostream* est_out = trial == 0 ? options.estimates_out : nullptr;
  Clock::duration busy{0};

  std::optional<Engine> walks;
  std::optional<DynamicMultigraph> fp_graph;
  std::optional<ForwardPush> fp;
  switch (options.engine) {
    case EngineKind::kWalksMult:
    case EngineKind::kWalksAdd: {
      EngineConfig config;
      config.eps = stream.eps;
      config.alpha = options.alpha;
      config.mode = options.engine == EngineKind::kWalksAdd ? WalkMode::kAdditive
                                                            : WalkMode::kMultiplicative;
      config.walks_per_vertex = options.walks_per_vertex;
      config.truncation = options.truncation;
      config.seed = trial_seed(options.seed, trial);
      const auto start = Clock::now();
      walks.emplace(initial, config);
      busy += Clock::now() - start;
      break;
    }
    case EngineKind::kForwardPush: {
      fp_graph.emplace(initial);
      const auto start = Clock::now();
      fp.emplace(*fp_graph, gamma, stream.eps);
      busy += Clock::now() - start;
      break;
    }
    case EngineKind::kOracleOnly:
      break;
  }

  std::size_t next = 0;
  for (const Update& rec : stream.records) {
    if (rec.kind == UpdateKind::kCheckpoint) {
      const Snapshot& snap = snapshots[next++];
      TrialSample sample;
      std::vector<double> est;
      if (walks) {
        est = walks->estimate_all();
        sample.regenerations = static_cast<double>(walks->stats().regenerations);
        sample.max_edge_load = static_cast<double>(walks->stats().peak_edge_load);
      } else if (fp) {
        est = fp->estimates();
        sample.push_work = static_cast<double>(fp->push_work());
      } else {
        est = snap.pagerank;
      }
      measure(est, snap.pagerank, sample);
      sample.elapsed_ms = to_ms(busy);
      if (est_out) write_estimates(*est_out, snap, est);
      samples.push_back(sample);
      continue;
    }
    const auto start = Clock::now();
    if (walks) {
      if (rec.kind == UpdateKind::kInsert) {
        walks->insert_edge(rec.u, rec.v);
      } else if (options.naive_delete) {
        walks->naive_delete_edge(rec.u, rec.v);
      } else {
        walks->delete_edge(rec.u, rec.v);
      }
    } else if (fp) {
      fp_graph->insert_edge(rec.u, rec.v);
      fp->on_edge_inserted(*fp_graph, rec.u, rec.v);
    }
    busy += Clock::now() - start;
  }
  if (trial == 0 && options.walks_out && walks) walks->walks().dump(*options.walks_out);
  return samples;
}

std::string format_number(double x) { return fmt::format("{}", x); }

}  // namespace

std::string to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::kWalksMult:
      return "walks-mult";
    case EngineKind::kWalksAdd:
      return "walks-add";
    case EngineKind::kForwardPush:
      return "forwardpush";
    case EngineKind::kOracleOnly:
      return "oracle-only";
  }
  return "?";
}

EngineKind parse_engine_kind(const std::string& text) {
  for (EngineKind kind : {EngineKind::kWalksMult, EngineKind::kWalksAdd,
                          EngineKind::kForwardPush, EngineKind::kOracleOnly}) {
    if (to_string(kind) == text) return kind;
  }
  throw std::invalid_argument(fmt::format("unknown engine '{}'", text));
}

std::uint64_t trial_seed(std::uint64_t base, std::uint32_t trial) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) return s;
  s.max = values.front();
  for (double x : values) {
    s.mean += x;
    s.max = std::max(s.max, x);
  }
  s.mean /= static_cast<double>(values.size());
  for (double x : values) s.std += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(s.std / static_cast<double>(values.size()));
  return s;
}

Report run_stream(const UpdateStream& stream, const DynamicMultigraph& initial,
                  const RunOptions& options) {
  if (initial.num_vertices() != stream.n || initial.mode() != stream.mode) {
    throw std::invalid_argument("initial graph does not match the stream header");
  }
  if (options.trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (options.engine == EngineKind::kForwardPush) {
    for (std::size_t i = 0; i < stream.records.size(); ++i) {
      if (stream.records[i].kind == UpdateKind::kDelete) {
        throw UnsupportedUpdateError(
            fmt::format("forwardpush supports insertions only; record {} is a deletion", i + 1));
      }
    }
  }
  double gamma = 0.0;
  if (options.engine == EngineKind::kForwardPush) {
    gamma = options.gamma ? *options.gamma
                          : options.alpha /
                                static_cast<double>(std::max<std::uint64_t>(
                                    1, total_degree_after_insertions(stream, initial)));
  }

  const std::vector<Snapshot> snapshots = oracle_snapshots(stream, initial);

  std::vector<std::vector<TrialSample>> results(options.trials);
  std::vector<std::exception_ptr> failures(options.trials);
  std::atomic<std::uint32_t> next_trial{0};
  auto worker = [&] {
    for (std::uint32_t k; (k = next_trial.fetch_add(1)) < options.trials;) {
      try {
        results[k] = run_trial(stream, initial, options, gamma, snapshots, k);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const unsigned workers =
      std::min<unsigned>(options.trials, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  Report report;
  report.timing = options.timing;
  for (std::size_t c = 0; c < snapshots.size(); ++c) {
    ReportRow row;
    row.label = snapshots[c].label;
    row.update_index = snapshots[c].update_index;
    row.trials = options.trials;
    std::vector<double> l1, rel, regen, load, work, elapsed;
    double worst = -1.0;
    for (const auto& trial : results) {
      const TrialSample& s = trial[c];
      l1.push_back(s.l1_error);
      rel.push_back(s.max_rel_dev);
      regen.push_back(s.regenerations);
      load.push_back(s.max_edge_load);
      work.push_back(s.push_work);
      elapsed.push_back(s.elapsed_ms);
      if (s.max_rel_dev > worst) {
        worst = s.max_rel_dev;
        row.worst_vertex = s.worst_vertex;
      }
    }
    row.l1_error = summarize(l1);
    row.max_rel_dev = summarize(rel);
    row.regenerations = summarize(regen);
    row.max_edge_load = summarize(load);
    row.push_work = summarize(work);
    if (options.timing) row.elapsed_ms_mean = summarize(elapsed).mean;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<std::string> report_columns(bool timing) {
  std::vector<std::string> cols = {
      "label",           "update_index",        "trials",
      "l1_error_mean",   "l1_error_std",        "l1_error_max",
      "max_rel_dev_mean", "max_rel_dev_std",    "max_rel_dev_max",
      "worst_vertex",    "regenerations_mean",  "regenerations_std",
      "max_edge_load_mean", "max_edge_load_std", "push_work_mean",
      "push_work_std"};
  if (timing) cols.push_back("elapsed_ms_mean");
  return cols;
}

void write_report(std::ostream& out, const Report& report) {
  const auto cols = report_columns(report.timing);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const ReportRow& r : report.rows) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.label, r.update_index,
               r.trials, format_number(r.l1_error.mean), format_number(r.l1_error.std),
               format_number(r.l1_error.max), format_number(r.max_rel_dev.mean),
               format_number(r.max_rel_dev.std), format_number(r.max_rel_dev.max),
               r.worst_vertex, format_number(r.regenerations.mean),
               format_number(r.regenerations.std), format_number(r.max_edge_load.mean),
               format_number(r.max_edge_load.std), format_number(r.push_work.mean),
               format_number(r.push_work.std));
    if (report.timing) fmt::print(out, ",{}", format_number(r.elapsed_ms_mean.value_or(0.0)));
    out << '\n';
  }
}

Report read_report(std::istream& in) {
  Report report;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, "empty report");
  auto split = [](const std::string& text) {
    std::vector<std::string> cells;
    std::stringstream ss(text);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    return cells;
  };
  const auto header = split(line);
  if (header == report_columns(true)) {
    report.timing = true;
  } else if (header != report_columns(false)) {
    throw ParseError(1, "unexpected report columns");
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != header.size()) {
      throw ParseError(line_no, fmt::format("expected {} columns, got {}", header.size(), c.size()));
    }
    auto num = [&](std::size_t i) { return detail::parse_double(c[i], line_no, header[i].c_str()); };
    ReportRow r;
    r.label = c[0];
    r.update_index = detail::parse_int<std::size_t>(c[1], line_no, "update_index");
    r.trials = detail::parse_int<std::uint32_t>(c[2], line_no, "trials");
    r.l1_error = {num(3), num(4), num(5)};
    r.max_rel_dev = {num(6), num(7), num(8)};
    r.worst_vertex = detail::parse_int<VertexId>(c[9], line_no, "worst_vertex");
    r.regenerations = {num(10), num(11), 0.0};
    r.max_edge_load = {num(12), num(13), 0.0};
    r.push_work = {num(14), num(15), 0.0};
    if (report.timing) r.elapsed_ms_mean = num(16);
    report.rows.push_back(std::move(r));
  }
  return report;
}

Verdict verify_at_checkpoints(const Report& report, ToleranceMode mode, double alpha,
                              double eps) {
  Verdict verdict;
  const double bound = mode == ToleranceMode::kAdditive ? 5.0 * alpha / (1.0 - eps) : alpha;
  for (const ReportRow& r : report.rows) {
    const bool additive = mode == ToleranceMode::kAdditive;
    const double measured = additive ? r.l1_error.max : r.max_rel_dev.max;
    const bool ok = measured <= bound;
    verdict.pass = verdict.pass && ok;
    if (additive) {
      verdict.lines.push_back(fmt::format("{} {}: l1_error_max = {:.6g} bound = {:.6g}",
                                          ok ? "PASS" : "FAIL", r.label, measured, bound));
    } else {
      verdict.lines.push_back(
          fmt::format("{} {}: max_rel_dev_max = {:.6g} bound = {:.6g} worst vertex = {}",
                      ok ? "PASS" : "FAIL", r.label, measured, bound, r.worst_vertex));
    }
  }
  return verdict;
}

BiasDemoResult run_bias_demo(std::uint64_t trials, std::uint64_t seed, bool naive) {
  DynamicMultigraph path(5, GraphMode::kUndirected, SelfLoops::kNone);
  for (VertexId v = 0; v + 1 < 5; ++v) path.insert_edge(v, v + 1);
  const WalkSeed walk{2, 2};
  BiasDemoResult result;
  result.trials = trials;
  for (std::uint64_t k = 0; k < trials; ++k) {
    EngineConfig config;
    config.seed = trial_seed(seed, static_cast<std::uint32_t>(k));
    Engine engine(path, config, std::span<const WalkSeed>(&walk, 1));
    if (naive) {
      engine.naive_delete_edge(3, 4);
    } else {
      engine.delete_edge(3, 4);
    }
    if (engine.walks().walk(0).at(2) == 3) ++result.hits;
  }
  return result;
}

}  // namespace dynpr
