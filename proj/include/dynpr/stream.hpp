#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dynpr/graph.hpp"
#include "dynpr/hard_instance.hpp"

namespace dynpr {

enum class UpdateKind { kInsert, kDelete, kCheckpoint };

struct Update {
  UpdateKind kind;
  VertexId u = 0;
  VertexId v = 0;
  std::string label;  // checkpoints only
};

/// Text format:
///
///   n <count> mode <directed|undirected> eps <float> [selfloops none]
///   + u v
///   - u v
///   c <label>
///
/// Blank lines and `#` comments are ignored. Serialization writes the
/// canonical form (single spaces, shortest round-trip floats, no comments),
/// so parsing a canonical file and writing it back reproduces it exactly.
struct UpdateStream {
  std::size_t n = 0;
  GraphMode mode = GraphMode::kDirected;
  double eps = 0.15;
  SelfLoops loops = SelfLoops::kProtected;
  std::vector<Update> records;

  std::size_t update_count() const;
  std::size_t checkpoint_count() const;
  /// An edgeless graph with the header's vertex count, mode and loop policy.
  DynamicMultigraph empty_graph() const;
};

UpdateStream read_stream(std::istream& in);
UpdateStream read_stream_file(const std::string& path);
void write_stream(std::ostream& out, const UpdateStream& stream);

/// The update sequence of a hard instance, with checkpoints labelled
/// `before-leaf<j>` (start of the completing round) and `leaf<j>`.
UpdateStream hard_instance_stream(const InstanceSpec& spec);

}  // namespace dynpr
