#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <unordered_map>
#include <vector>

#include "latdim/tree.hpp"

namespace latdim {

/// Axis lengths of the smallest complete grid enclosing an embedding.
/// The number of axes is the lattice dimension; the lengths sum to the
/// isometric dimension (the tree's edge count).
struct GridProfile {
  std::vector<std::int32_t> lengths;  // one entry per axis, in axis order

  std::size_t lattice_dim() const noexcept { return lengths.size(); }
  std::int64_t isometric_dim() const noexcept {
    return std::accumulate(lengths.begin(), lengths.end(), std::int64_t{0});
  }
};

/// A vertex -> Z^d assignment. All points share one dimension; the defining
/// property (l1 distance equals tree distance for every pair) is checked by
/// verify_isometric, not assumed here.
class Embedding {
 public:
  Embedding(int dimension, std::vector<Vertex> ids,
            std::vector<std::vector<std::int32_t>> coords,
            std::uint64_t tree_fingerprint);

  int dimension() const noexcept { return dimension_; }

  /// Vertex ids in ascending order, aligned with points().
  const std::vector<Vertex>& vertices() const noexcept { return ids_; }
  const std::vector<std::vector<std::int32_t>>& points() const noexcept {
    return coords_;
  }

  bool contains(Vertex v) const { return index_.count(v) != 0; }
  std::span<const std::int32_t> point(Vertex v) const;
  std::size_t index_of(Vertex v) const;

  /// Hash of the source tree's canonical edge list; 0 when unknown (for
  /// example after deserialization).
  std::uint64_t tree_fingerprint() const noexcept { return fingerprint_; }

 private:
  int dimension_;
  std::vector<Vertex> ids_;  // sorted
  std::vector<std::vector<std::int32_t>> coords_;
  std::unordered_map<Vertex, std::size_t> index_;
  std::uint64_t fingerprint_;
};

/// An embedding stored as one signed unit step per tree edge: vertex i sits
/// at point(parent[i]) + step[i] * e_axis[i], with the root at the origin.
/// This is O(V) storage regardless of dimension, which matters because the
/// dimension grows with the leaf count (a dense coordinate table for a
/// 100k-vertex random tree would need gigabytes).
struct CompactEmbedding {
  int dimension = 0;
  std::uint32_t root = 0;             // dense index into tree.vertices()
  std::vector<std::int32_t> parent;   // dense index, -1 at the root
  std::vector<std::int32_t> axis;     // axis of the edge to the parent
  std::vector<std::int8_t> step;      // +1 or -1
  std::vector<std::int32_t> depth;    // edges to the root
};

/// ceil(n/2) for a tree with n >= 2 leaves, 0 for a single vertex.
int lattice_dimension(const Tree& t);

/// Isometric embedding into Z^ceil(n/2) in compact form. Deterministic:
/// the same edge list yields the same embedding on every platform.
CompactEmbedding embed_tree_compact(const Tree& t);

/// Expand a compact embedding into explicit per-vertex coordinates.
Embedding materialize(const Tree& t, const CompactEmbedding& ce);

/// embed_tree_compact + materialize.
Embedding embed_tree(const Tree& t);

/// The star/spider construction: center at the origin, leg pairs along
/// +axis/-axis. Also accepts paths and a single vertex; throws
/// std::invalid_argument for trees with more than one branching vertex.
Embedding embed_spider(const Tree& t);

/// Translate each axis so its minimum coordinate is 0. Preserves all
/// pairwise l1 distances; idempotent.
Embedding normalize(const Embedding& e);

/// Per-axis extents (max - min). Throws std::invalid_argument if an axis has
/// zero extent, which signals a wasted dimension.
GridProfile grid_profile(const Embedding& e);

std::int64_t l1_distance(std::span<const std::int32_t> a,
                         std::span<const std::int32_t> b);

}  // namespace latdim
