#include "latdim/addressing.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

namespace latdim {

std::span<const std::int32_t> AddressTable::label_of(Vertex v) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), v);
  if (it == ids.end() || *it != v)
    throw std::invalid_argument("no label for vertex " + std::to_string(v));
  return labels[static_cast<std::size_t>(it - ids.begin())];
}

std::int64_t hamming_distance(std::span<const std::int32_t> a,
                              std::span<const std::int32_t> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("label width mismatch");
  std::int64_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) count += (a[i] != b[i]) ? 1 : 0;
  return count;
}

AddressTable hypercube_address(const Tree& t, Vertex root) {
  const std::size_t root_idx = t.index_of(root);
  const std::size_t n = t.vertex_count();
  const int q = static_cast<int>(t.edge_count());

  // Coordinate index of each edge, keyed by (min,max) endpoint ids.
  std::map<std::pair<Vertex, Vertex>, int> edge_coord;
  {
    int i = 0;
    for (const auto& e : t.edges()) edge_coord[e] = i++;
  }

  std::vector<std::vector<std::int32_t>> labels(n);
  labels[root_idx].assign(static_cast<std::size_t>(q), 0);
  std::vector<char> seen(n, 0);
  seen[root_idx] = 1;
  std::queue<std::size_t> bfs;
  bfs.push(root_idx);
  while (!bfs.empty()) {
    std::size_t x = bfs.front();
    bfs.pop();
    for (std::uint32_t w : t.adj(x)) {
      if (seen[w]) continue;
      seen[w] = 1;
      Vertex a = t.id_at(x), b = t.id_at(w);
      int coord = edge_coord.at(std::minmax(a, b));
      labels[w] = labels[x];
      labels[w][static_cast<std::size_t>(coord)] ^= 1;
      bfs.push(w);
    }
  }

  AddressTable table;
  table.scheme = AddressTable::Scheme::Hypercube;
  table.width = q;
  table.bounds.assign(static_cast<std::size_t>(q), 1);
  table.ids = t.vertices();
  table.labels = std::move(labels);
  return table;
}

AddressTable grid_address(const Embedding& e) {
  const std::size_t d = static_cast<std::size_t>(e.dimension());
  std::vector<std::int32_t> lo(d, std::numeric_limits<std::int32_t>::max());
  std::vector<std::int32_t> hi(d, std::numeric_limits<std::int32_t>::min());
  for (const auto& p : e.points()) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  for (std::size_t k = 0; k < d; ++k)
    if (lo[k] != 0)
      throw std::invalid_argument(
          "embedding is not normalized: axis " + std::to_string(k) +
          " has minimum " + std::to_string(lo[k]));

  AddressTable table;
  table.scheme = AddressTable::Scheme::Grid;
  table.width = e.dimension();
  table.bounds.assign(hi.begin(), hi.end());
  table.ids = e.vertices();
  table.labels = e.points();
  return table;
}

}  // namespace latdim
