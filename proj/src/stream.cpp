#include "dynpr/stream.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include "text_util.hpp"

namespace dynpr {

std::size_t UpdateStream::update_count() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const Update& r) {
    return r.kind != UpdateKind::kCheckpoint;
  }));
}

std::size_t UpdateStream::checkpoint_count() const {
  return records.size() - update_count();
}

DynamicMultigraph UpdateStream::empty_graph() const { return DynamicMultigraph(n, mode, loops); }

UpdateStream read_stream(std::istream& in) {
  UpdateStream out;
  bool have_header = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if ((tokens.size() != 6 && tokens.size() != 8) || tokens[0] != "n" ||
          tokens[2] != "mode" || tokens[4] != "eps") {
        throw ParseError(line_no,
                         "expected header 'n <int> mode <directed|undirected> eps <float>'");
      }
      out.n = detail::parse_int<std::size_t>(tokens[1], line_no, "vertex count");
      if (out.n == 0) throw ParseError(line_no, "vertex count must be positive");
      try {
        out.mode = parse_graph_mode(tokens[3]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
      out.eps = detail::parse_double(tokens[5], line_no, "eps");
      if (!(out.eps > 0.0 && out.eps < 1.0)) throw ParseError(line_no, "eps must lie in (0, 1)");
      if (tokens.size() == 8) {
        if (tokens[6] != "selfloops" || tokens[7] != "none") {
          throw ParseError(line_no, "expected 'selfloops none'");
        }
        out.loops = SelfLoops::kNone;
      }
      have_header = true;
      continue;
    }
    const std::string& op = tokens[0];
    if (op == "+" || op == "-") {
      if (tokens.size() != 3) throw ParseError(line_no, fmt::format("expected '{} u v'", op));
      Update rec;
      rec.kind = op == "+" ? UpdateKind::kInsert : UpdateKind::kDelete;
      rec.u = detail::parse_int<VertexId>(tokens[1], line_no, "vertex");
      rec.v = detail::parse_int<VertexId>(tokens[2], line_no, "vertex");
      if (rec.u >= out.n || rec.v >= out.n) {
        throw ParseError(line_no, fmt::format("vertex id out of range for n = {}", out.n));
      }
      out.records.push_back(std::move(rec));
    } else if (op == "c") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'c <label>'");
      Update rec;
      rec.kind = UpdateKind::kCheckpoint;
      rec.label = tokens[1];
      out.records.push_back(std::move(rec));
    } else {
      throw ParseError(line_no, fmt::format("unknown record '{}'", op));
    }
  }
  if (!have_header) throw ParseError(line_no, "missing stream header");
  return out;
}

UpdateStream read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open stream file '{}'", path));
  return read_stream(in);
}

void write_stream(std::ostream& out, const UpdateStream& stream) {
  fmt::print(out, "n {} mode {} eps {}", stream.n, to_string(stream.mode), stream.eps);
  if (stream.loops == SelfLoops::kNone) out << " selfloops none";
  out << '\n';
  for (const Update& rec : stream.records) {
    switch (rec.kind) {
      case UpdateKind::kInsert:
        fmt::print(out, "+ {} {}\n", rec.u, rec.v);
        break;
      case UpdateKind::kDelete:
        fmt::print(out, "- {} {}\n", rec.u, rec.v);
        break;
      case UpdateKind::kCheckpoint:
        fmt::print(out, "c {}\n", rec.label);
        break;
    }
  }
}

UpdateStream hard_instance_stream(const InstanceSpec& spec) {
  UpdateStream out;
  out.n = spec.params.n;
  out.mode = GraphMode::kDirected;
  out.eps = spec.params.eps;
  out.loops = SelfLoops::kNone;

  std::vector<std::pair<std::size_t, std::string>> marks;
  for (const HardCheckpoint& cp : spec.checkpoints) {
    if (cp.before_index) {
      marks.emplace_back(*cp.before_index, fmt::format("before-leaf{}", cp.leaf_ordinal));
    }
    marks.emplace_back(cp.update_index, fmt::format("leaf{}", cp.leaf_ordinal));
  }
  std::stable_sort(marks.begin(), marks.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::size_t next_mark = 0;
  auto flush_marks = [&](std::size_t applied) {
    while (next_mark < marks.size() && marks[next_mark].first == applied) {
      Update rec;
      rec.kind = UpdateKind::kCheckpoint;
      rec.label = marks[next_mark].second;
      out.records.push_back(std::move(rec));
      ++next_mark;
    }
  };
  flush_marks(0);
  for (std::size_t i = 0; i < spec.updates.size(); ++i) {
    out.records.push_back({UpdateKind::kInsert, spec.updates[i].from, spec.updates[i].to, {}});
    flush_marks(i + 1);
  }
  return out;
}

}  // namespace dynpr
