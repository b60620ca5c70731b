#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "dynpr/stream.hpp"

using namespace dynpr;

namespace {

std::string roundtrip(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  write_stream(out, read_stream(in));
  return out.str();
}

std::size_t error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_stream(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("canonical streams survive a round trip unchanged") {
  const std::string canonical =
      "n 5 mode undirected eps 0.15\n+ 0 1\n+ 1 2\nc after-two\n- 0 1\nc end\n";
  CHECK(roundtrip(canonical) == canonical);
  const std::string loops = "n 3 mode directed eps 0.3 selfloops none\n+ 0 1\n";
  CHECK(roundtrip(loops) == loops);
}

TEST_CASE("random canonical streams round trip") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 50; ++k) {
    UpdateStream s;
    s.n = 1 + rng() % 50;
    s.mode = rng() % 2 ? GraphMode::kDirected : GraphMode::kUndirected;
    s.eps = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    for (int r = 0; r < 30; ++r) {
      const auto pick = rng() % 3;
      Update rec{pick == 0   ? UpdateKind::kInsert
                 : pick == 1 ? UpdateKind::kDelete
                             : UpdateKind::kCheckpoint,
                 static_cast<VertexId>(rng() % s.n), static_cast<VertexId>(rng() % s.n),
                 {}};
      if (rec.kind == UpdateKind::kCheckpoint) {
        rec.u = rec.v = 0;
        rec.label = "cp" + std::to_string(r);
      }
      s.records.push_back(rec);
    }
    std::ostringstream first;
    write_stream(first, s);
    std::istringstream in(first.str());
    const auto back = read_stream(in);
    CHECK(back.eps == s.eps);
    CHECK(back.records.size() == s.records.size());
    std::ostringstream second;
    write_stream(second, back);
    CHECK(first.str() == second.str());
  }
}

TEST_CASE("comments and blank lines are skipped") {
  const std::string text =
      "# a stream\n\nn 4 mode directed eps 0.5  # header\n\n+ 0 1 # first\n   \nc x\n";
  CHECK(roundtrip(text) == "n 4 mode directed eps 0.5\n+ 0 1\nc x\n");
}

TEST_CASE("parse errors carry the line number") {
  CHECK(error_line("n 3 mode directed eps 0.2\n+ 0 1\n+ 0 3\n") == 3);
  CHECK(error_line("n 3 mode directed eps 0.2\n* 0 1\n") == 2);
  CHECK(error_line("n 3 mode sideways eps 0.2\n") == 1);
  CHECK(error_line("# nothing\nn 3 mode directed\n") == 2);
  CHECK(error_line("n 3 mode directed eps 1.5\n") == 1);
  CHECK(error_line("n 3 mode directed eps 0.2\n+ 0\n") == 2);
  CHECK(error_line("n 3 mode directed eps 0.2\nc\n") == 2);
  CHECK(error_line("\n\n") == 2);
}

TEST_CASE("counts and the empty graph") {
  std::istringstream in("n 4 mode undirected eps 0.2\n+ 0 1\nc a\n- 0 1\n");
  const auto s = read_stream(in);
  CHECK(s.update_count() == 2);
  CHECK(s.checkpoint_count() == 1);
  const auto g = s.empty_graph();
  CHECK(g.num_vertices() == 4);
  CHECK(!g.directed());
  CHECK(g.out_degree(3) == 1);
}
