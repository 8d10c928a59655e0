#include "latdim/embedding.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace latdim {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

[[noreturn]] void internal_error(const char* what) {
  throw std::logic_error(std::string("internal error: ") + what);
}

// One removed pair of hanging paths. Chains run outward from the anchor, the
// leaf last; the smaller-id leaf's chain takes the positive side of the axis
// the pair will occupy.
struct PathPair {
  std::uint32_t pos_anchor = kNone;
  std::vector<std::uint32_t> pos;
  std::uint32_t neg_anchor = kNone;
  std::vector<std::uint32_t> neg;
};

}  // namespace

Embedding::Embedding(int dimension, std::vector<Vertex> ids,
                     std::vector<std::vector<std::int32_t>> coords,
                     std::uint64_t tree_fingerprint)
    : dimension_(dimension),
      ids_(std::move(ids)),
      coords_(std::move(coords)),
      fingerprint_(tree_fingerprint) {
  if (dimension_ < 0) throw std::invalid_argument("negative dimension");
  if (ids_.empty()) throw std::invalid_argument("embedding has no points");
  if (ids_.size() != coords_.size())
    throw std::invalid_argument("vertex/point count mismatch");
  if (!std::is_sorted(ids_.begin(), ids_.end()) ||
      std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
    throw std::invalid_argument("vertex ids must be sorted and unique");
  for (const auto& c : coords_)
    if (c.size() != static_cast<std::size_t>(dimension_))
      throw std::invalid_argument("point dimension mismatch");
  index_.reserve(ids_.size() * 2);
  for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = i;
}

std::span<const std::int32_t> Embedding::point(Vertex v) const {
  return coords_[index_of(v)];
}

std::size_t Embedding::index_of(Vertex v) const {
  auto it = index_.find(v);
  if (it == index_.end())
    throw std::invalid_argument("embedding has no point for vertex " +
                                std::to_string(v));
  return it->second;
}

std::int64_t l1_distance(std::span<const std::int32_t> a,
                         std::span<const std::int32_t> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dimension mismatch between points");
  std::int64_t sum = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    sum += std::abs(static_cast<std::int64_t>(a[k]) - b[k]);
  return sum;
}

int lattice_dimension(const Tree& t) {
  std::size_t leaf_count = 0;
  for (std::size_t i = 0; i < t.vertex_count(); ++i)
    if (t.degree_at(i) == 1) ++leaf_count;
  if (t.vertex_count() == 1) return 0;
  return static_cast<int>((leaf_count + 1) / 2);
}

CompactEmbedding embed_tree_compact(const Tree& t) {
  const std::size_t n = t.vertex_count();
  CompactEmbedding ce;
  ce.parent.assign(n, -1);
  ce.axis.assign(n, -1);
  ce.step.assign(n, 0);
  ce.depth.assign(n, 0);
  if (n == 1) {
    ce.dimension = 0;
    ce.root = 0;
    return ce;
  }

  const int final_dim = lattice_dimension(t);

  std::vector<int> deg(n);
  std::vector<char> alive(n, 1);
  std::size_t branch_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    deg[i] = t.degree_at(i);
    if (deg[i] > 2) ++branch_count;
  }

  auto next_alive = [&](std::uint32_t v, std::uint32_t avoid) -> std::uint32_t {
    for (std::uint32_t w : t.adj(v))
      if (alive[w] && w != avoid) return w;
    return kNone;
  };

  // Walk a degree-2 chain starting at the unique live neighbor of `from`
  // that is not `avoid`; stops at the first vertex of degree != 2.
  auto walk_chain = [&](std::uint32_t from,
                        std::uint32_t avoid) -> std::pair<std::uint32_t, std::uint32_t> {
    std::uint32_t prev = from;
    std::uint32_t cur = next_alive(from, avoid);
    if (cur == kNone) internal_error("dangling chain walk");
    while (deg[cur] == 2) {
      std::uint32_t nxt = next_alive(cur, prev);
      prev = cur;
      cur = nxt;
    }
    return {cur, prev};  // (endpoint, last vertex before it)
  };

  std::vector<PathPair> removed;

  if (branch_count >= 2) {
    // Leaves grouped by the branching vertex their hanging path ends at.
    // `heads` holds each group's smallest leaf, so the next pair to remove
    // (the lexicographically smallest leaf pair with distinct anchors) is
    // always the first two entries.
    std::vector<std::uint32_t> anchor(n, kNone), approach(n, kNone);
    std::unordered_map<std::uint32_t, std::set<Vertex>> groups;
    std::set<std::pair<Vertex, std::uint32_t>> heads;

    auto group_insert = [&](std::uint32_t anc, Vertex leaf_id) {
      auto& g = groups[anc];
      if (g.empty()) {
        g.insert(leaf_id);
        heads.insert({leaf_id, anc});
      } else {
        Vertex old_head = *g.begin();
        g.insert(leaf_id);
        if (leaf_id < old_head) {
          heads.erase({old_head, anc});
          heads.insert({leaf_id, anc});
        }
      }
    };
    auto group_erase = [&](std::uint32_t anc, Vertex leaf_id) {
      auto it = groups.find(anc);
      if (it == groups.end()) internal_error("missing anchor group");
      auto& g = it->second;
      bool was_head = (*g.begin() == leaf_id);
      g.erase(leaf_id);
      if (was_head) heads.erase({leaf_id, anc});
      if (g.empty())
        groups.erase(it);
      else if (was_head)
        heads.insert({*g.begin(), anc});
    };

    for (std::uint32_t i = 0; i < n; ++i) {
      if (deg[i] != 1) continue;
      auto [anc, app] = walk_chain(i, i);
      if (deg[anc] < 3) internal_error("hanging path ended at a non-branching vertex");
      anchor[i] = anc;
      approach[i] = app;
      group_insert(anc, t.id_at(i));
    }

    // Collect the chain from a leaf back to its known anchor, returned in
    // anchor-to-leaf order (anchor excluded).
    auto chain_to_anchor = [&](std::uint32_t leaf,
                               std::uint32_t anc) -> std::vector<std::uint32_t> {
      std::vector<std::uint32_t> rev = {leaf};
      std::uint32_t prev = leaf;
      std::uint32_t cur = next_alive(leaf, leaf);
      while (cur != anc) {
        rev.push_back(cur);
        std::uint32_t nxt = next_alive(cur, prev);
        prev = cur;
        cur = nxt;
      }
      std::reverse(rev.begin(), rev.end());
      return rev;
    };

    // Re-anchor the at most one leaf still grouped under a vertex whose
    // degree just dropped to 2; its hanging path extends through that vertex.
    auto reanchor_group = [&](std::uint32_t w) {
      auto it = groups.find(w);
      if (it == groups.end()) return;
      std::vector<Vertex> members(it->second.begin(), it->second.end());
      for (Vertex leaf_id : members) {
        std::uint32_t x = static_cast<std::uint32_t>(t.index_of(leaf_id));
        auto [anc, app] = walk_chain(w, approach[x]);
        if (deg[anc] < 3) internal_error("anchor extension hit a leaf");
        group_erase(w, leaf_id);
        anchor[x] = anc;
        approach[x] = app;
        group_insert(anc, leaf_id);
      }
    };

    while (branch_count >= 2) {
      if (heads.size() < 2)
        internal_error("branching tree without two distinct anchors");
      auto it = heads.begin();
      Vertex u_id = it->first;
      std::uint32_t a_anchor = it->second;
      auto it2 = std::next(it);
      Vertex v_id = it2->first;
      std::uint32_t b_anchor = it2->second;
      std::uint32_t u = static_cast<std::uint32_t>(t.index_of(u_id));
      std::uint32_t v = static_cast<std::uint32_t>(t.index_of(v_id));

      PathPair pp;
      pp.pos_anchor = a_anchor;
      pp.pos = chain_to_anchor(u, a_anchor);
      pp.neg_anchor = b_anchor;
      pp.neg = chain_to_anchor(v, b_anchor);
      for (std::uint32_t x : pp.pos) alive[x] = 0;
      for (std::uint32_t x : pp.neg) alive[x] = 0;
      removed.push_back(std::move(pp));

      group_erase(a_anchor, u_id);
      group_erase(b_anchor, v_id);
      if (--deg[a_anchor] == 2) --branch_count;
      if (--deg[b_anchor] == 2) --branch_count;
      if (branch_count < 2) break;
      if (deg[a_anchor] == 2) reanchor_group(a_anchor);
      if (deg[b_anchor] == 2) reanchor_group(b_anchor);
    }
  }

  // Base case on the remaining subtree: a spider (one branching vertex),
  // a path, or in degenerate form a single edge.
  int base_dim = 0;
  std::uint32_t root = kNone;

  if (branch_count == 1) {
    std::uint32_t center = kNone;
    for (std::uint32_t i = 0; i < n; ++i)
      if (alive[i] && deg[i] > 2) center = i;
    if (center == kNone) internal_error("lost the spider center");

    struct Leg {
      std::vector<std::uint32_t> chain;  // center-adjacent first, leaf last
      Vertex leaf_id;
    };
    std::vector<Leg> legs;
    for (std::uint32_t nb : t.adj(center)) {
      if (!alive[nb]) continue;
      Leg leg;
      std::uint32_t prev = center, cur = nb;
      leg.chain.push_back(cur);
      while (deg[cur] == 2) {
        std::uint32_t nxt = next_alive(cur, prev);
        prev = cur;
        cur = nxt;
        leg.chain.push_back(cur);
      }
      if (deg[cur] != 1) internal_error("spider leg hit a branching vertex");
      leg.leaf_id = t.id_at(cur);
      legs.push_back(std::move(leg));
    }
    std::sort(legs.begin(), legs.end(), [](const Leg& x, const Leg& y) {
      if (x.chain.size() != y.chain.size())
        return x.chain.size() > y.chain.size();
      return x.leaf_id < y.leaf_id;
    });

    base_dim = static_cast<int>((legs.size() + 1) / 2);
    root = center;
    for (std::size_t k = 0; k < legs.size(); ++k) {
      int ax = static_cast<int>(k / 2);
      std::int8_t sg = (k % 2 == 0) ? std::int8_t{1} : std::int8_t{-1};
      std::uint32_t par = center;
      for (std::uint32_t x : legs[k].chain) {
        ce.parent[x] = static_cast<std::int32_t>(par);
        ce.axis[x] = ax;
        ce.step[x] = sg;
        par = x;
      }
    }
  } else {
    // Path: lay it along axis 0 starting from the smaller-id endpoint.
    std::uint32_t e0 = kNone, e1 = kNone;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!alive[i] || deg[i] != 1) continue;
      if (e0 == kNone)
        e0 = i;
      else if (e1 == kNone)
        e1 = i;
      else
        internal_error("path base with more than two endpoints");
    }
    if (e1 == kNone) internal_error("path base with fewer than two endpoints");
    root = t.id_at(e0) < t.id_at(e1) ? e0 : e1;

    base_dim = 1;
    std::uint32_t prev = root;
    std::uint32_t cur = next_alive(root, root);
    while (true) {
      ce.parent[cur] = static_cast<std::int32_t>(prev);
      ce.axis[cur] = 0;
      ce.step[cur] = 1;
      if (deg[cur] == 1) break;
      std::uint32_t nxt = next_alive(cur, prev);
      prev = cur;
      cur = nxt;
    }
  }

  const int k_steps = static_cast<int>(removed.size());
  ce.dimension = base_dim + k_steps;
  ce.root = root;
  if (ce.dimension != final_dim)
    internal_error("constructed dimension disagrees with the leaf count");

  // Later-removed pairs sit on lower axes: unwinding the removals re-adds
  // them in reverse order, appending one fresh axis each time.
  for (int i = 0; i < k_steps; ++i) {
    const PathPair& pp = removed[static_cast<std::size_t>(i)];
    int ax = base_dim + (k_steps - 1 - i);
    std::uint32_t par = pp.pos_anchor;
    for (std::uint32_t x : pp.pos) {
      ce.parent[x] = static_cast<std::int32_t>(par);
      ce.axis[x] = ax;
      ce.step[x] = 1;
      par = x;
    }
    par = pp.neg_anchor;
    for (std::uint32_t x : pp.neg) {
      ce.parent[x] = static_cast<std::int32_t>(par);
      ce.axis[x] = ax;
      ce.step[x] = -1;
      par = x;
    }
  }

  // Depths, and a full-coverage check while at it.
  std::vector<std::vector<std::uint32_t>> kids(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i == ce.root) continue;
    if (ce.parent[i] < 0) internal_error("vertex left without a parent");
    kids[static_cast<std::uint32_t>(ce.parent[i])].push_back(i);
  }
  std::queue<std::uint32_t> q;
  q.push(ce.root);
  std::size_t seen = 1;
  while (!q.empty()) {
    std::uint32_t x = q.front();
    q.pop();
    for (std::uint32_t c : kids[x]) {
      ce.depth[c] = ce.depth[x] + 1;
      ++seen;
      q.push(c);
    }
  }
  if (seen != n) internal_error("parent links do not span the tree");
  return ce;
}

Embedding materialize(const Tree& t, const CompactEmbedding& ce) {
  const std::size_t n = t.vertex_count();
  if (ce.parent.size() != n)
    throw std::invalid_argument("compact embedding built for a different tree");
  const std::size_t d = static_cast<std::size_t>(ce.dimension);

  std::vector<std::vector<std::uint32_t>> kids(n);
  for (std::uint32_t i = 0; i < n; ++i)
    if (i != ce.root)
      kids[static_cast<std::uint32_t>(ce.parent[i])].push_back(i);

  std::vector<std::vector<std::int32_t>> coords(n);
  coords[ce.root].assign(d, 0);
  std::queue<std::uint32_t> q;
  q.push(ce.root);
  while (!q.empty()) {
    std::uint32_t x = q.front();
    q.pop();
    for (std::uint32_t c : kids[x]) {
      coords[c] = coords[x];
      coords[c][static_cast<std::size_t>(ce.axis[c])] += ce.step[c];
      q.push(c);
    }
  }
  return Embedding(ce.dimension, t.vertices(), std::move(coords),
                   t.fingerprint());
}

Embedding embed_tree(const Tree& t) { return materialize(t, embed_tree_compact(t)); }

Embedding embed_spider(const Tree& t) {
  if (classify(t).kind == TreeShape::General)
    throw std::invalid_argument(
        "tree has more than one branching vertex; use embed_tree");
  return embed_tree(t);
}

Embedding normalize(const Embedding& e) {
  const std::size_t d = static_cast<std::size_t>(e.dimension());
  std::vector<std::int32_t> mins(d, std::numeric_limits<std::int32_t>::max());
  for (const auto& p : e.points())
    for (std::size_t k = 0; k < d; ++k) mins[k] = std::min(mins[k], p[k]);
  std::vector<std::vector<std::int32_t>> coords = e.points();
  for (auto& p : coords)
    for (std::size_t k = 0; k < d; ++k) p[k] -= mins[k];
  return Embedding(e.dimension(), e.vertices(), std::move(coords),
                   e.tree_fingerprint());
}

GridProfile grid_profile(const Embedding& e) {
  const std::size_t d = static_cast<std::size_t>(e.dimension());
  std::vector<std::int32_t> lo(d, std::numeric_limits<std::int32_t>::max());
  std::vector<std::int32_t> hi(d, std::numeric_limits<std::int32_t>::min());
  for (const auto& p : e.points()) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  GridProfile gp;
  gp.lengths.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    gp.lengths[k] = hi[k] - lo[k];
    if (gp.lengths[k] == 0)
      throw std::invalid_argument("axis " + std::to_string(k) +
                                  " has zero extent (wasted dimension)");
  }
  return gp;
}

}  // namespace latdim
