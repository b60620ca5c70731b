#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "dynpr/bench.hpp"
#include "dynpr/graph.hpp"
#include "dynpr/hard_instance.hpp"
#include "dynpr/oracle.hpp"
#include "dynpr/stream.hpp"

namespace {

using namespace dynpr;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  return out;
}

DynamicMultigraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open graph file '{}'", path));
  return read_edge_list(in);
}

struct OracleArgs {
  std::string graph;
  double eps = 0.15;
  std::string out;
};

int run_oracle(const OracleArgs& a) {
  const DynamicMultigraph g = load_graph(a.graph);
  const auto pi = power_iteration(g, a.eps);
  std::ofstream file;
  if (!a.out.empty()) file = open_output(a.out);
  std::ostream& out = a.out.empty() ? std::cout : file;
  out << "vertex,pagerank\n";
  for (VertexId v = 0; v < pi.size(); ++v) fmt::print(out, "{},{}\n", v, pi[v]);
  return 0;
}

struct GenHardArgs {
  std::string flavor = "custom";
  std::size_t n = 2048;
  double eps = 0.25;
  double alpha = 1e-4;
  double delta = 0.5;
  std::uint64_t p = 4;
  std::uint32_t t = 3;
  std::uint32_t d = 3;
  std::optional<std::size_t> s;
  std::string prefix = "hard";
};

int run_gen_hard(const GenHardArgs& a) {
  HardInstanceParams params;
  if (a.flavor == "additive") {
    params = additive_params(a.n, a.eps, a.alpha);
  } else if (a.flavor == "multiplicative") {
    params = multiplicative_params(a.n, a.eps, a.delta);
  } else {
    params = custom_params(a.n, a.eps, a.p, a.t, a.d, a.s.value_or(a.n / 8));
  }
  const InstanceSpec spec = build_instance(params);
  {
    auto out = open_output(a.prefix + ".graph");
    write_edge_list(out, spec.initial_graph());
  }
  {
    auto out = open_output(a.prefix + ".stream");
    write_stream(out, hard_instance_stream(spec));
  }
  {
    auto out = open_output(a.prefix + ".checkpoints.csv");
    const auto& lm = spec.landmarks;
    out << "update_index,before_index,leaf_ordinal,leaf_id,parity,root,c0,c1\n";
    for (const HardCheckpoint& cp : spec.checkpoints) {
      fmt::print(out, "{},{},{},{},{},{},{},{}\n", cp.update_index,
                 cp.before_index ? std::to_string(*cp.before_index) : std::string(),
                 cp.leaf_ordinal, cp.leaf, cp.parity, lm.root, lm.c0, lm.c1);
    }
  }
  fmt::print("p={} t={} d={} s={} tree={} leaves={} updates={}\n", params.p, params.t,
             params.d, params.s, params.tree_size(), spec.landmarks.leaves.size(),
             spec.updates.size());
  return 0;
}

struct RunArgs {
  std::string stream;
  std::string graph;
  std::string engine = "walks-mult";
  std::string out;
  std::string estimates;
  std::string dump_walks;
  RunOptions options;
  std::optional<std::uint32_t> walks_per_vertex;
  std::optional<std::uint32_t> truncate;
  std::optional<double> gamma;
};

int run_run(RunArgs a) {
  const UpdateStream stream = read_stream_file(a.stream);
  const DynamicMultigraph initial = a.graph.empty() ? stream.empty_graph() : load_graph(a.graph);
  RunOptions& opt = a.options;
  opt.engine = parse_engine_kind(a.engine);
  opt.walks_per_vertex = a.walks_per_vertex;
  opt.truncation = a.truncate;
  opt.gamma = a.gamma;
  std::ofstream estimates, walks, file;
  if (!a.estimates.empty()) {
    estimates = open_output(a.estimates);
    estimates << "label,vertex,estimate,pagerank\n";
    opt.estimates_out = &estimates;
  }
  if (!a.dump_walks.empty()) {
    walks = open_output(a.dump_walks);
    opt.walks_out = &walks;
  }
  const Report report = run_stream(stream, initial, opt);
  if (!a.out.empty()) file = open_output(a.out);
  write_report(a.out.empty() ? std::cout : file, report);
  return 0;
}

struct VerifyArgs {
  std::string report;
  std::string mode = "additive";
  double alpha = 0.5;
  double eps = 0.15;
};

int run_verify(const VerifyArgs& a) {
  std::ifstream in(a.report);
  if (!in) throw std::runtime_error(fmt::format("cannot open report '{}'", a.report));
  const Report report = read_report(in);
  const ToleranceMode mode =
      a.mode == "multiplicative" ? ToleranceMode::kMultiplicative : ToleranceMode::kAdditive;
  const Verdict verdict = verify_at_checkpoints(report, mode, a.alpha, a.eps);
  for (const auto& line : verdict.lines) std::cout << line << '\n';
  std::cout << (verdict.pass ? "PASS" : "FAIL") << '\n';
  return verdict.pass ? 0 : 1;
}

struct BiasArgs {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  bool naive = false;
};

int run_bias(const BiasArgs& a) {
  const BiasDemoResult r = run_bias_demo(a.trials, a.seed, a.naive);
  fmt::print("trials={} hits={} frequency={:.4f}\n", r.trials, r.hits, r.frequency());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic PageRank engines, oracle and stream replay"};
  app.require_subcommand(1);

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact PageRank of a graph file as CSV");
  oracle_cmd->add_option("--graph", oracle.graph, "Edge-list file")->required();
  oracle_cmd->add_option("--eps", oracle.eps, "Jump probability");
  oracle_cmd->add_option("--out", oracle.out, "Output CSV (default stdout)");

  GenHardArgs hard;
  auto* hard_cmd = app.add_subcommand("gen-hard", "Write a lower-bound instance and its stream");
  hard_cmd->add_option("--flavor", hard.flavor, "additive, multiplicative or custom")
      ->check(CLI::IsMember({"additive", "multiplicative", "custom"}));
  hard_cmd->add_option("--n", hard.n, "Total vertex count");
  hard_cmd->add_option("--eps", hard.eps, "Jump probability");
  hard_cmd->add_option("--alpha", hard.alpha, "Additive flavor accuracy");
  hard_cmd->add_option("--delta", hard.delta, "Multiplicative flavor exponent");
  hard_cmd->add_option("--p", hard.p, "Custom: multiplicity base");
  hard_cmd->add_option("--t", hard.t, "Custom: arity");
  hard_cmd->add_option("--d", hard.d, "Custom: depth");
  hard_cmd->add_option("--s", hard.s, "Custom: star size (default n/8)");
  hard_cmd->add_option("--prefix", hard.prefix, "Output path prefix");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Replay an update stream and report per checkpoint");
  run_cmd->add_option("--stream", run.stream, "Update stream file")->required();
  run_cmd->add_option("--graph", run.graph, "Initial edge list (default: empty graph)");
  run_cmd->add_option("--engine", run.engine, "walks-mult, walks-add, forwardpush, oracle-only")
      ->check(CLI::IsMember({"walks-mult", "walks-add", "forwardpush", "oracle-only"}));
  run_cmd->add_option("--alpha", run.options.alpha, "Accuracy parameter");
  run_cmd->add_option("--seed", run.options.seed, "Base seed");
  run_cmd->add_option("--trials", run.options.trials, "Independent replays");
  run_cmd->add_flag("--naive-delete", run.options.naive_delete,
                    "Regrow affected walks from their origin (biased)");
  run_cmd->add_option("--walks-per-vertex", run.walks_per_vertex, "Override walks per vertex");
  run_cmd->add_option("--truncate", run.truncate, "Override additive truncation length");
  run_cmd->add_option("--gamma", run.gamma, "ForwardPush residual threshold");
  run_cmd->add_flag("--timing", run.options.timing, "Add elapsed_ms_mean column");
  run_cmd->add_option("--out", run.out, "Report CSV (default stdout)");
  run_cmd->add_option("--estimates", run.estimates, "Per-vertex estimates of trial 0");
  run_cmd->add_option("--dump-walks", run.dump_walks, "Final walk set of trial 0");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a report against accuracy bounds");
  verify_cmd->add_option("--report", verify.report, "Report CSV")->required();
  verify_cmd->add_option("--mode", verify.mode, "additive or multiplicative")
      ->check(CLI::IsMember({"additive", "multiplicative"}));
  verify_cmd->add_option("--alpha", verify.alpha, "Accuracy parameter");
  verify_cmd->add_option("--eps", verify.eps, "Jump probability");

  BiasArgs bias;
  auto* bias_cmd = app.add_subcommand("bias-demo", "Deletion bias on the 5-vertex path");
  bias_cmd->add_option("--trials", bias.trials, "Number of trials");
  bias_cmd->add_option("--seed", bias.seed, "Base seed");
  bias_cmd->add_flag("--naive-delete", bias.naive, "Regrow from the origin");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*oracle_cmd) return run_oracle(oracle);
    if (*hard_cmd) return run_gen_hard(hard);
    if (*run_cmd) return run_run(run);
    if (*verify_cmd) return run_verify(verify);
    if (*bias_cmd) return run_bias(bias);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
