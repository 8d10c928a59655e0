#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "latdim/embedding.hpp"
#include "latdim/tree.hpp"

namespace latdim {

/// A checked structural claim failed: the inputs are inconsistent with an
/// isometric embedding (as opposed to being malformed).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IsometryViolation {
  Vertex u = -1;
  Vertex v = -1;
  std::int64_t tree_distance = 0;
  std::int64_t l1_distance = 0;
};

struct IsometryReport {
  bool passed = false;
  std::uint64_t checked_pairs = 0;
  std::optional<IsometryViolation> first_violation;
  bool sampled = false;  // a passing sampled run is evidence, not proof
};

/// Check l1(e[u],e[v]) == tree distance for every unordered pair.
/// Tree distances come from breadth-first traversals, independent of how the
/// embedding was built. `threads` > 1 partitions the sources across workers;
/// the report is identical regardless of thread count.
IsometryReport verify_isometric(const Tree& t, const Embedding& e,
                                int threads = 1);

/// Check every edge plus `extra_pairs` seeded random pairs.
IsometryReport verify_isometric_sampled(const Tree& t, const Embedding& e,
                                        std::size_t extra_pairs,
                                        std::uint64_t seed);

/// Sampled check of a compact embedding; never expands coordinates, so it
/// works at sizes where a dense coordinate table would not fit in memory.
IsometryReport verify_compact_sampled(const Tree& t,
                                      const CompactEmbedding& ce,
                                      std::size_t extra_pairs,
                                      std::uint64_t seed);

/// Record of contracting one inner edge together with its lattice slab.
struct ContractionStep {
  Vertex u = -1;  // u < v
  Vertex v = -1;
  int axis = -1;
  std::int32_t slab_u = 0;  // coordinate of u on `axis`
  std::int32_t slab_v = 0;  // coordinate of v; |slab_u - slab_v| == 1
  Vertex resulting_vertex = -1;
};

/// Contract the inner edge (u,v): identify the endpoints (keeping the smaller
/// id) and collapse the lattice slab the edge crossed, decrementing every
/// coordinate beyond it on that axis. Checks that (u,v) was the only tree
/// edge crossing the slab and that the leaf count is unchanged; violations
/// throw VerificationError because they mean the input was not isometric.
std::tuple<Tree, Embedding, ContractionStep> contract_inner_edge(
    const Tree& t, const Embedding& e, std::pair<Vertex, Vertex> edge);

/// Certificate that the embedding dimension is at least ceil(n/2): after all
/// inner edges are contracted away the tree is a star whose n leaves sit at
/// pairwise distinct signed unit vectors from the center, so 2d >= n.
struct LowerBoundCertificate {
  std::vector<ContractionStep> steps;
  std::size_t final_star_leaf_count = 0;
  int final_dimension = 0;
  int bound = 0;  // ceil(n/2) <= final_dimension
  // leaf id -> (axis, +1/-1) read off the final star
  std::vector<std::tuple<Vertex, int, int>> leaf_directions;
};

/// Repeatedly contract the lexicographically smallest inner edge until none
/// remain, then read the certificate off the resulting star. Requires at
/// least 3 vertices and an isometric embedding.
LowerBoundCertificate contract_to_star(const Tree& t, const Embedding& e);

/// Exhaustive search for the smallest d <= max_dim admitting an isometric
/// embedding: depth-first placement in breadth-first vertex order with
/// pruning against precomputed distances. Guarded to 10 vertices.
/// Returns nullopt when no dimension up to max_dim works.
std::optional<int> brute_force_min_dimension(const Tree& t, int max_dim);

}  // namespace latdim
