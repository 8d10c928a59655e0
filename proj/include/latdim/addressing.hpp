#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latdim/embedding.hpp"
#include "latdim/tree.hpp"

namespace latdim {

/// Per-vertex integer labels under one of the two addressing schemes:
/// 0/1 vectors of length q whose Hamming distance reproduces tree distance,
/// or bounded integer vectors of length d whose l1 distance does.
struct AddressTable {
  enum class Scheme { Hypercube, Grid };

  Scheme scheme = Scheme::Hypercube;
  int width = 0;
  std::vector<std::int32_t> bounds;  // per-coordinate maximum (all 1 for Hypercube)
  std::vector<Vertex> ids;           // ascending, aligned with labels
  std::vector<std::vector<std::int32_t>> labels;

  std::span<const std::int32_t> label_of(Vertex v) const;
};

/// Labels of length q (edge count). Edge i, in lexicographic (min,max) order,
/// owns coordinate i; label(v)[i] = 1 iff edge i lies on the root-to-v path.
AddressTable hypercube_address(const Tree& t, Vertex root);

/// Labels read off a normalized embedding; bounds are the grid side lengths.
/// Throws std::invalid_argument if some axis minimum is not 0.
AddressTable grid_address(const Embedding& e);

std::int64_t hamming_distance(std::span<const std::int32_t> a,
                              std::span<const std::int32_t> b);

}  // namespace latdim
