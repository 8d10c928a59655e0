#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace latdim {

using Vertex = std::int64_t;

/// Input error carrying the 1-based line number it was detected on
/// (0 when the problem concerns the input as a whole).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : msg),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

enum class TreeShape { SingleVertex, Path, Spider, General };

struct ShapeClass {
  TreeShape kind = TreeShape::SingleVertex;
  Vertex center = -1;  // the unique branching vertex, set for Spider only
};

/// The path from a leaf to the nearest vertex of degree greater than two.
struct HangingPath {
  Vertex leaf = -1;
  Vertex anchor = -1;
  std::vector<Vertex> path;  // anchor first, leaf last
  int length = 0;            // edge count == path.size() - 1
};

/// Immutable unrooted tree over arbitrary nonnegative integer vertex ids.
///
/// Construction validates the tree invariants (connected, acyclic, no
/// self-loops or parallel edges). Adjacency lists are kept sorted so every
/// traversal order is deterministic. Read-only queries are safe to call
/// concurrently.
class Tree {
 public:
  /// Build from an undirected edge list. Throws ParseError if the edges do
  /// not form a tree.
  static Tree from_edges(const std::vector<std::pair<Vertex, Vertex>>& edges);

  /// A tree consisting of one isolated vertex.
  static Tree single(Vertex id);

  std::size_t vertex_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept {
    return ids_.empty() ? 0 : ids_.size() - 1;
  }

  /// Vertex ids in ascending order.
  const std::vector<Vertex>& vertices() const noexcept { return ids_; }

  bool contains(Vertex v) const { return index_.count(v) != 0; }

  /// Sorted neighbor ids. Throws std::invalid_argument on unknown id.
  const std::vector<Vertex>& neighbors(Vertex v) const {
    return nbr_ids_[index_of(v)];
  }

  int degree(Vertex v) const {
    return static_cast<int>(nbr_ids_[index_of(v)].size());
  }

  /// Degree-1 vertices in ascending order; empty for a single-vertex tree.
  std::vector<Vertex> leaves() const;

  /// Canonical edge list: each edge as (min,max), sorted ascending.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Edge count on the unique u-v path, by breadth-first traversal.
  int distance(Vertex u, Vertex v) const;

  /// FNV-1a hash of the canonical edge list (plus vertex count), used to tie
  /// an Embedding back to the tree it was built from.
  std::uint64_t fingerprint() const;

  // Dense-index view used by the algorithms. Index i corresponds to
  // vertices()[i].
  std::size_t index_of(Vertex v) const;
  Vertex id_at(std::size_t i) const { return ids_[i]; }
  const std::vector<std::uint32_t>& adj(std::size_t i) const {
    return nbr_idx_[i];
  }
  int degree_at(std::size_t i) const {
    return static_cast<int>(nbr_idx_[i].size());
  }

 private:
  Tree() = default;
  void build_index();

  std::vector<Vertex> ids_;                        // sorted
  std::vector<std::vector<Vertex>> nbr_ids_;       // sorted neighbor ids
  std::vector<std::vector<std::uint32_t>> nbr_idx_;  // same order, dense
  std::unordered_map<Vertex, std::size_t> index_;
};

/// Read the edge-list text format: one edge per line as two nonnegative
/// base-10 integers, blank lines and '#' comments ignored, "# vertex <id>"
/// declaring an isolated vertex.
Tree parse_edge_list(std::istream& in);
Tree parse_edge_list(std::string_view text);

/// Serialize in the same edge-list format parse_edge_list reads.
std::string to_edge_list(const Tree& t);

/// Distances for every unordered vertex pair, keyed (min,max). One BFS per
/// source; intended for small trees and verification.
std::map<std::pair<Vertex, Vertex>, int> all_pairs_distances(const Tree& t);

/// Hanging path of a leaf. Throws std::invalid_argument if `leaf` is not a
/// leaf or the tree has no vertex of degree > 2.
HangingPath hanging_path(const Tree& t, Vertex leaf);

ShapeClass classify(const Tree& t);

/// Uniformly random labeled tree on {0,...,vertex_count-1}, decoded from a
/// seeded random Pruefer sequence. Identical (vertex_count, seed) pairs give
/// bit-identical trees on every platform.
Tree random_tree(std::size_t vertex_count, std::uint64_t seed);

}  // namespace latdim
