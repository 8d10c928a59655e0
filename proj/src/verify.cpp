#include "latdim/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <queue>
#include <random>
#include <set>
#include <thread>

namespace latdim {

namespace {

// O(1)-ish tree distance queries via binary-lifting LCA over a breadth-first
// rooting. Built from the tree alone, so it is independent of any embedding
// it is used to check.
class DistanceOracle {
 public:
  explicit DistanceOracle(const Tree& t) {
    const std::size_t n = t.vertex_count();
    depth_.assign(n, 0);
    std::vector<std::int32_t> parent(n, 0);
    std::vector<char> seen(n, 0);
    std::queue<std::uint32_t> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      std::uint32_t x = q.front();
      q.pop();
      for (std::uint32_t w : t.adj(x)) {
        if (seen[w]) continue;
        seen[w] = 1;
        parent[w] = static_cast<std::int32_t>(x);
        depth_[w] = depth_[x] + 1;
        q.push(w);
      }
    }
    int levels = 1;
    while ((std::size_t{1} << levels) < n) ++levels;
    up_.assign(static_cast<std::size_t>(levels), parent);
    for (std::size_t k = 1; k < up_.size(); ++k)
      for (std::size_t i = 0; i < n; ++i)
        up_[k][i] = up_[k - 1][static_cast<std::size_t>(up_[k - 1][i])];
  }

  std::int64_t distance(std::size_t a, std::size_t b) const {
    return depth_[a] + depth_[b] - 2 * depth_[lca(a, b)];
  }

 private:
  std::size_t lca(std::size_t a, std::size_t b) const {
    if (depth_[a] < depth_[b]) std::swap(a, b);
    std::int32_t diff = depth_[a] - depth_[b];
    for (std::size_t k = 0; diff != 0; ++k, diff >>= 1)
      if (diff & 1) a = static_cast<std::size_t>(up_[k][a]);
    if (a == b) return a;
    for (std::size_t k = up_.size(); k-- > 0;) {
      if (up_[k][a] != up_[k][b]) {
        a = static_cast<std::size_t>(up_[k][a]);
        b = static_cast<std::size_t>(up_[k][b]);
      }
    }
    return static_cast<std::size_t>(up_[0][a]);
  }

  std::vector<std::int32_t> depth_;
  std::vector<std::vector<std::int32_t>> up_;
};

void require_same_vertices(const Tree& t, const Embedding& e) {
  if (t.vertices() != e.vertices())
    throw std::invalid_argument(
        "embedding does not cover exactly the tree's vertices");
}

std::vector<std::pair<std::size_t, std::size_t>> sample_index_pairs(
    std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (n < 2) return out;
  out.reserve(count);
  std::mt19937_64 gen(seed);
  while (out.size() < count) {
    auto a = static_cast<std::size_t>(gen() % n);
    auto b = static_cast<std::size_t>(gen() % n);
    if (a != b) out.emplace_back(a, b);
  }
  return out;
}

bool violation_less(const IsometryViolation& a, const IsometryViolation& b) {
  return std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v);
}

}  // namespace

IsometryReport verify_isometric(const Tree& t, const Embedding& e,
                                int threads) {
  require_same_vertices(t, e);
  const std::size_t n = t.vertex_count();
  const auto& pts = e.points();

  int workers = std::max(1, threads);
  workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), n));

  std::vector<std::optional<IsometryViolation>> found(
      static_cast<std::size_t>(workers));
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(workers), 0);

  auto scan = [&](int w) {
    std::vector<std::int64_t> dist(n, -1);
    std::queue<std::size_t> q;
    for (std::size_t s = static_cast<std::size_t>(w); s < n;
         s += static_cast<std::size_t>(workers)) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[s] = 0;
      q.push(s);
      while (!q.empty()) {
        std::size_t x = q.front();
        q.pop();
        for (std::uint32_t nb : t.adj(x)) {
          if (dist[nb] < 0) {
            dist[nb] = dist[x] + 1;
            q.push(nb);
          }
        }
      }
      for (std::size_t j = s + 1; j < n; ++j) {
        ++counts[static_cast<std::size_t>(w)];
        std::int64_t l1 = l1_distance(pts[s], pts[j]);
        if (l1 != dist[j]) {
          IsometryViolation viol{t.id_at(s), t.id_at(j), dist[j], l1};
          auto& best = found[static_cast<std::size_t>(w)];
          if (!best || violation_less(viol, *best)) best = viol;
        }
      }
    }
  };

  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& th : pool) th.join();
  }

  IsometryReport report;
  report.sampled = false;
  for (int w = 0; w < workers; ++w) {
    report.checked_pairs += counts[static_cast<std::size_t>(w)];
    const auto& best = found[static_cast<std::size_t>(w)];
    if (best && (!report.first_violation ||
                 violation_less(*best, *report.first_violation)))
      report.first_violation = best;
  }
  report.passed = !report.first_violation.has_value();
  return report;
}

IsometryReport verify_isometric_sampled(const Tree& t, const Embedding& e,
                                        std::size_t extra_pairs,
                                        std::uint64_t seed) {
  require_same_vertices(t, e);
  const auto& pts = e.points();
  DistanceOracle oracle(t);

  IsometryReport report;
  report.sampled = true;

  auto check = [&](std::size_t a, std::size_t b) {
    ++report.checked_pairs;
    if (report.first_violation) return;
    std::int64_t td = oracle.distance(a, b);
    std::int64_t l1 = l1_distance(pts[a], pts[b]);
    if (l1 != td)
      report.first_violation =
          IsometryViolation{t.id_at(a), t.id_at(b), td, l1};
  };

  for (const auto& [u, v] : t.edges()) check(t.index_of(u), t.index_of(v));
  for (const auto& [a, b] :
       sample_index_pairs(t.vertex_count(), extra_pairs, seed))
    check(a, b);

  report.passed = !report.first_violation.has_value();
  return report;
}

IsometryReport verify_compact_sampled(const Tree& t,
                                      const CompactEmbedding& ce,
                                      std::size_t extra_pairs,
                                      std::uint64_t seed) {
  const std::size_t n = t.vertex_count();
  if (ce.parent.size() != n || ce.axis.size() != n || ce.step.size() != n ||
      ce.depth.size() != n || ce.root >= n)
    throw std::invalid_argument("compact embedding does not match the tree");
  for (std::size_t i = 0; i < n; ++i) {
    if (i == ce.root) {
      if (ce.parent[i] != -1)
        throw std::invalid_argument("compact embedding root has a parent");
      continue;
    }
    auto p = static_cast<std::uint32_t>(ce.parent[i]);
    const auto& nbrs = t.adj(i);
    if (std::find(nbrs.begin(), nbrs.end(), p) == nbrs.end())
      throw std::invalid_argument("compact embedding parent is not a neighbor");
    if (ce.axis[i] < 0 || ce.axis[i] >= ce.dimension ||
        (ce.step[i] != 1 && ce.step[i] != -1))
      throw std::invalid_argument("compact embedding has a malformed step");
    if (ce.depth[i] != ce.depth[p] + 1)
      throw std::invalid_argument("compact embedding depths are inconsistent");
  }

  DistanceOracle oracle(t);
  std::vector<std::int64_t> net(static_cast<std::size_t>(ce.dimension), 0);
  std::vector<std::int32_t> touched;

  // Net per-axis displacement along the tree path a..b, read off the step
  // labels; l1 distance is the sum of absolute nets.
  auto path_l1 = [&](std::size_t a, std::size_t b) -> std::int64_t {
    auto bump = [&](std::size_t x, int sign) {
      auto ax = static_cast<std::size_t>(ce.axis[x]);
      if (net[ax] == 0) touched.push_back(ce.axis[x]);
      net[ax] += sign * ce.step[x];
    };
    while (ce.depth[a] > ce.depth[b]) {
      bump(a, +1);
      a = static_cast<std::size_t>(ce.parent[a]);
    }
    while (ce.depth[b] > ce.depth[a]) {
      bump(b, -1);
      b = static_cast<std::size_t>(ce.parent[b]);
    }
    while (a != b) {
      bump(a, +1);
      bump(b, -1);
      a = static_cast<std::size_t>(ce.parent[a]);
      b = static_cast<std::size_t>(ce.parent[b]);
    }
    std::int64_t sum = 0;
    for (std::int32_t ax : touched) {
      sum += std::abs(net[static_cast<std::size_t>(ax)]);
      net[static_cast<std::size_t>(ax)] = 0;
    }
    touched.clear();
    return sum;
  };

  IsometryReport report;
  report.sampled = true;

  auto check = [&](std::size_t a, std::size_t b) {
    ++report.checked_pairs;
    if (report.first_violation) return;
    std::int64_t td = oracle.distance(a, b);
    std::int64_t l1 = path_l1(a, b);
    if (l1 != td)
      report.first_violation =
          IsometryViolation{t.id_at(a), t.id_at(b), td, l1};
  };

  for (std::size_t i = 0; i < n; ++i)
    if (i != ce.root) check(i, static_cast<std::size_t>(ce.parent[i]));
  for (const auto& [a, b] : sample_index_pairs(n, extra_pairs, seed))
    check(a, b);

  report.passed = !report.first_violation.has_value();
  return report;
}

std::tuple<Tree, Embedding, ContractionStep> contract_inner_edge(
    const Tree& t, const Embedding& e, std::pair<Vertex, Vertex> edge) {
  Vertex u = std::min(edge.first, edge.second);
  Vertex v = std::max(edge.first, edge.second);
  require_same_vertices(t, e);
  const auto& nbrs = t.neighbors(u);
  if (!std::binary_search(nbrs.begin(), nbrs.end(), v))
    throw std::invalid_argument("(" + std::to_string(u) + "," +
                                std::to_string(v) + ") is not a tree edge");
  if (t.degree(u) < 2 || t.degree(v) < 2)
    throw std::invalid_argument("(" + std::to_string(u) + "," +
                                std::to_string(v) +
                                ") is not an inner edge");

  auto pu = e.point(u), pv = e.point(v);
  int axis = -1;
  for (int k = 0; k < e.dimension(); ++k) {
    if (pu[static_cast<std::size_t>(k)] == pv[static_cast<std::size_t>(k)])
      continue;
    if (axis != -1 ||
        std::abs(pu[static_cast<std::size_t>(k)] -
                 pv[static_cast<std::size_t>(k)]) != 1)
      throw VerificationError(
          "edge endpoints are not adjacent lattice points; embedding is not "
          "isometric");
    axis = k;
  }
  if (axis == -1)
    throw VerificationError("edge endpoints coincide; embedding is not isometric");

  const auto ax = static_cast<std::size_t>(axis);
  const std::int32_t slab_low = std::min(pu[ax], pv[ax]);

  // The contracted edge must be the only tree edge crossing this slab.
  std::size_t crossings = 0;
  for (const auto& [p, q] : t.edges()) {
    std::int32_t cp = e.point(p)[ax], cq = e.point(q)[ax];
    if (std::min(cp, cq) == slab_low && std::max(cp, cq) == slab_low + 1)
      ++crossings;
  }
  if (crossings != 1)
    throw VerificationError(
        "slab on axis " + std::to_string(axis) + " between " +
        std::to_string(slab_low) + " and " + std::to_string(slab_low + 1) +
        " is crossed by " + std::to_string(crossings) +
        " edges; embedding is not isometric");

  std::vector<std::pair<Vertex, Vertex>> new_edges;
  new_edges.reserve(t.edge_count() - 1);
  for (const auto& [p, q] : t.edges()) {
    if (p == u && q == v) continue;
    Vertex np = (p == v) ? u : p;
    Vertex nq = (q == v) ? u : q;
    new_edges.emplace_back(np, nq);
  }
  Tree contracted = Tree::from_edges(new_edges);
  if (contracted.leaves().size() != t.leaves().size())
    throw VerificationError("contraction changed the leaf count");

  std::vector<std::vector<std::int32_t>> coords;
  coords.reserve(contracted.vertex_count());
  for (Vertex w : contracted.vertices()) {
    std::vector<std::int32_t> c(e.point(w).begin(), e.point(w).end());
    if (c[ax] > slab_low) --c[ax];
    coords.push_back(std::move(c));
  }
  Embedding reduced(e.dimension(), contracted.vertices(), std::move(coords),
                    contracted.fingerprint());

  ContractionStep step;
  step.u = u;
  step.v = v;
  step.axis = axis;
  step.slab_u = pu[ax];
  step.slab_v = pv[ax];
  step.resulting_vertex = u;
  return {std::move(contracted), std::move(reduced), step};
}

LowerBoundCertificate contract_to_star(const Tree& t, const Embedding& e) {
  if (t.vertex_count() < 3)
    throw std::invalid_argument("contraction certificate needs at least 3 vertices");
  require_same_vertices(t, e);

  const std::size_t original_leaves = t.leaves().size();
  LowerBoundCertificate cert;
  cert.final_dimension = e.dimension();

  Tree cur = t;
  Embedding cur_e = e;
  for (;;) {
    std::optional<std::pair<Vertex, Vertex>> inner;
    for (const auto& [p, q] : cur.edges()) {
      if (cur.degree(p) >= 2 && cur.degree(q) >= 2) {
        inner = {p, q};
        break;
      }
    }
    if (!inner) break;
    auto [next_t, next_e, step] = contract_inner_edge(cur, cur_e, *inner);
    cert.steps.push_back(step);
    cur = std::move(next_t);
    cur_e = std::move(next_e);
  }

  auto leaves = cur.leaves();
  if (leaves.size() != original_leaves)
    throw VerificationError("contraction changed the leaf count");
  if (leaves.size() + 1 != cur.vertex_count())
    throw VerificationError("terminal tree is not a star");

  Vertex center = -1;
  for (Vertex w : cur.vertices())
    if (cur.degree(w) != 1) center = w;
  if (center < 0) throw VerificationError("terminal star has no center");

  auto pc = cur_e.point(center);
  std::set<std::pair<int, int>> directions;
  for (Vertex leaf : leaves) {
    auto pl = cur_e.point(leaf);
    int axis = -1, sign = 0;
    for (int k = 0; k < cur_e.dimension(); ++k) {
      std::int32_t d = pl[static_cast<std::size_t>(k)] -
                       pc[static_cast<std::size_t>(k)];
      if (d == 0) continue;
      if (axis != -1 || std::abs(d) != 1)
        throw VerificationError("star leaf " + std::to_string(leaf) +
                                " is not at a signed unit vector");
      axis = k;
      sign = d > 0 ? 1 : -1;
    }
    if (axis == -1)
      throw VerificationError("star leaf " + std::to_string(leaf) +
                              " coincides with the center");
    if (!directions.insert({axis, sign}).second)
      throw VerificationError("two star leaves share direction axis " +
                              std::to_string(axis));
    cert.leaf_directions.emplace_back(leaf, axis, sign);
  }

  cert.final_star_leaf_count = original_leaves;
  cert.bound = static_cast<int>((original_leaves + 1) / 2);
  if (cert.bound > cert.final_dimension)
    throw VerificationError(
        "certificate bound exceeds the embedding dimension");
  return cert;
}

std::optional<int> brute_force_min_dimension(const Tree& t, int max_dim) {
  const std::size_t n = t.vertex_count();
  if (n > 10)
    throw std::invalid_argument(
        "brute-force search is limited to 10 vertices");
  if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
  if (n == 1) return 0;

  // Breadth-first placement order from the smallest id.
  std::vector<std::size_t> order;
  std::vector<std::size_t> parent_pos(n, 0);
  {
    std::vector<int> pos_of(n, -1);
    std::queue<std::size_t> q;
    q.push(0);
    pos_of[0] = 0;
    order.push_back(0);
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop();
      for (std::uint32_t w : t.adj(x)) {
        if (pos_of[w] >= 0) continue;
        pos_of[w] = static_cast<int>(order.size());
        parent_pos[order.size()] = static_cast<std::size_t>(pos_of[x]);
        order.push_back(w);
        q.push(w);
      }
    }
  }

  // Pairwise distances in placement order.
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> d(n, -1);
    std::queue<std::size_t> q;
    d[order[i]] = 0;
    q.push(order[i]);
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop();
      for (std::uint32_t w : t.adj(x))
        if (d[w] < 0) {
          d[w] = d[x] + 1;
          q.push(w);
        }
    }
    for (std::size_t j = 0; j < n; ++j) dist[i][j] = d[order[j]];
  }

  for (int dim = 1; dim <= max_dim; ++dim) {
    std::vector<std::vector<int>> pts(n, std::vector<int>(
                                            static_cast<std::size_t>(dim), 0));
    // Axis reflections and permutations preserve isometry, so fresh axes are
    // introduced in increasing order and always stepped positively first.
    std::function<bool(std::size_t, int)> place = [&](std::size_t pos,
                                                      int used) -> bool {
      if (pos == n) return true;
      const std::size_t par = parent_pos[pos];
      const int axis_limit = std::min(used + 1, dim);
      for (int a = 0; a < axis_limit; ++a) {
        for (int s : {1, -1}) {
          if (a == used && s == -1) continue;
          pts[pos] = pts[par];
          pts[pos][static_cast<std::size_t>(a)] += s;
          bool ok = true;
          for (std::size_t j = 0; j < pos && ok; ++j) {
            int l1 = 0;
            for (int k = 0; k < dim; ++k)
              l1 += std::abs(pts[pos][static_cast<std::size_t>(k)] -
                             pts[j][static_cast<std::size_t>(k)]);
            ok = (l1 == dist[pos][j]);
          }
          if (ok && place(pos + 1, a == used ? used + 1 : used)) return true;
        }
      }
      return false;
    };
    if (place(1, 0)) return dim;
  }
  return std::nullopt;
}

}  // namespace latdim
