#include "latdim/tree.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace latdim {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(std::uint64_t& h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

}  // namespace

Tree Tree::from_edges(const std::vector<std::pair<Vertex, Vertex>>& edges) {
  if (edges.empty())
    throw ParseError("empty edge list (use Tree::single for one vertex)", 0);

  std::set<Vertex> vertex_set;
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0) throw ParseError("negative vertex id", 0);
    if (a == b) throw ParseError("self-loop at vertex " + std::to_string(a), 0);
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second)
      throw ParseError("duplicate edge " + std::to_string(key.first) + " " +
                           std::to_string(key.second),
                       0);
    vertex_set.insert(a);
    vertex_set.insert(b);
  }

  if (edges.size() > vertex_set.size() - 1)
    throw ParseError("cycle detected", 0);
  if (edges.size() < vertex_set.size() - 1)
    throw ParseError("disconnected input", 0);

  Tree t;
  t.ids_.assign(vertex_set.begin(), vertex_set.end());
  t.build_index();
  t.nbr_ids_.resize(t.ids_.size());
  for (const auto& [a, b] : edges) {
    t.nbr_ids_[t.index_.at(a)].push_back(b);
    t.nbr_ids_[t.index_.at(b)].push_back(a);
  }
  for (auto& nbrs : t.nbr_ids_) std::sort(nbrs.begin(), nbrs.end());

  t.nbr_idx_.resize(t.ids_.size());
  for (std::size_t i = 0; i < t.ids_.size(); ++i) {
    t.nbr_idx_[i].reserve(t.nbr_ids_[i].size());
    for (Vertex v : t.nbr_ids_[i])
      t.nbr_idx_[i].push_back(static_cast<std::uint32_t>(t.index_.at(v)));
  }

  // |E| == |V|-1 already holds, so one traversal reaching every vertex
  // certifies both connectivity and acyclicity.
  std::vector<char> reached(t.ids_.size(), 0);
  std::queue<std::size_t> q;
  q.push(0);
  reached[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    for (std::uint32_t w : t.nbr_idx_[u]) {
      if (!reached[w]) {
        reached[w] = 1;
        ++count;
        q.push(w);
      }
    }
  }
  if (count != t.ids_.size()) throw ParseError("disconnected input", 0);
  return t;
}

Tree Tree::single(Vertex id) {
  if (id < 0) throw ParseError("negative vertex id", 0);
  Tree t;
  t.ids_ = {id};
  t.nbr_ids_.resize(1);
  t.nbr_idx_.resize(1);
  t.build_index();
  return t;
}

void Tree::build_index() {
  index_.clear();
  index_.reserve(ids_.size() * 2);
  for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = i;
}

std::size_t Tree::index_of(Vertex v) const {
  auto it = index_.find(v);
  if (it == index_.end())
    throw std::invalid_argument("unknown vertex id " + std::to_string(v));
  return it->second;
}

std::vector<Vertex> Tree::leaves() const {
  std::vector<Vertex> out;
  if (ids_.size() == 1) return out;  // a degree-0 vertex is not a leaf
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (nbr_idx_[i].size() == 1) out.push_back(ids_[i]);
  return out;
}

std::vector<std::pair<Vertex, Vertex>> Tree::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < ids_.size(); ++i)
    for (Vertex w : nbr_ids_[i])
      if (ids_[i] < w) out.emplace_back(ids_[i], w);
  std::sort(out.begin(), out.end());
  return out;
}

int Tree::distance(Vertex u, Vertex v) const {
  std::size_t src = index_of(u), dst = index_of(v);
  if (src == dst) return 0;
  std::vector<int> dist(ids_.size(), -1);
  std::queue<std::size_t> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    std::size_t x = q.front();
    q.pop();
    for (std::uint32_t w : nbr_idx_[x]) {
      if (dist[w] < 0) {
        dist[w] = dist[x] + 1;
        if (w == dst) return dist[w];
        q.push(w);
      }
    }
  }
  return dist[dst];  // unreachable: the tree is connected
}

std::uint64_t Tree::fingerprint() const {
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, ids_.size());
  for (const auto& [a, b] : edges()) {
    fnv_mix(h, static_cast<std::uint64_t>(a));
    fnv_mix(h, static_cast<std::uint64_t>(b));
  }
  if (ids_.size() == 1) fnv_mix(h, static_cast<std::uint64_t>(ids_[0]));
  return h;
}

Tree parse_edge_list(std::istream& in) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Vertex> declared;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (first[0] == '#') {
      // "# vertex <id>" declares an isolated vertex; other comments ignored.
      std::string word = first.substr(1);
      if (word.empty()) ls >> word;
      if (word == "vertex") {
        Vertex id;
        if (ls >> id && id >= 0) declared.push_back(id);
      }
      continue;
    }
    Vertex a, b;
    std::istringstream es(line);
    std::string trailing;
    if (!(es >> a >> b) || a < 0 || b < 0)
      throw ParseError("expected two nonnegative integers", lineno);
    if (es >> trailing)
      throw ParseError("trailing content after edge: '" + trailing + "'",
                       lineno);
    edges.emplace_back(a, b);
  }

  if (edges.empty()) {
    if (declared.size() == 1) return Tree::single(declared[0]);
    if (declared.empty()) throw ParseError("no edges in input", 0);
    throw ParseError("disconnected input", 0);
  }
  Tree t = Tree::from_edges(edges);
  for (Vertex v : declared)
    if (!t.contains(v)) throw ParseError("disconnected input", 0);
  return t;
}

Tree parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

std::string to_edge_list(const Tree& t) {
  std::ostringstream out;
  if (t.vertex_count() == 1) {
    out << "# vertex " << t.vertices()[0] << "\n";
    return out.str();
  }
  for (const auto& [a, b] : t.edges()) out << a << " " << b << "\n";
  return out.str();
}

std::map<std::pair<Vertex, Vertex>, int> all_pairs_distances(const Tree& t) {
  std::map<std::pair<Vertex, Vertex>, int> out;
  const std::size_t n = t.vertex_count();
  std::vector<int> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<std::size_t> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop();
      for (std::uint32_t w : t.adj(x)) {
        if (dist[w] < 0) {
          dist[w] = dist[x] + 1;
          q.push(w);
        }
      }
    }
    for (std::size_t i = s + 1; i < n; ++i)
      out[{t.id_at(s), t.id_at(i)}] = dist[i];
  }
  return out;
}

HangingPath hanging_path(const Tree& t, Vertex leaf) {
  std::size_t cur = t.index_of(leaf);
  if (t.degree_at(cur) != 1)
    throw std::invalid_argument("vertex " + std::to_string(leaf) +
                                " is not a leaf");
  std::vector<Vertex> rev = {leaf};
  std::size_t prev = cur;
  cur = t.adj(cur)[0];
  while (t.degree_at(cur) == 2) {
    rev.push_back(t.id_at(cur));
    std::size_t next = t.adj(cur)[0] == prev ? t.adj(cur)[1] : t.adj(cur)[0];
    prev = cur;
    cur = next;
  }
  if (t.degree_at(cur) < 3)
    throw std::invalid_argument("tree has no vertex of degree > 2");
  rev.push_back(t.id_at(cur));
  HangingPath hp;
  hp.leaf = leaf;
  hp.anchor = t.id_at(cur);
  hp.path.assign(rev.rbegin(), rev.rend());
  hp.length = static_cast<int>(hp.path.size()) - 1;
  return hp;
}

ShapeClass classify(const Tree& t) {
  std::size_t branching = 0;
  Vertex center = -1;
  for (std::size_t i = 0; i < t.vertex_count(); ++i) {
    if (t.degree_at(i) > 2) {
      ++branching;
      center = t.id_at(i);
    }
  }
  if (branching == 0)
    return {t.vertex_count() == 1 ? TreeShape::SingleVertex : TreeShape::Path,
            -1};
  if (branching == 1) return {TreeShape::Spider, center};
  return {TreeShape::General, -1};
}

Tree random_tree(std::size_t vertex_count, std::uint64_t seed) {
  if (vertex_count == 0)
    throw std::invalid_argument("vertex_count must be positive");
  if (vertex_count == 1) return Tree::single(0);
  if (vertex_count == 2) return Tree::from_edges({{0, 1}});

  const std::size_t n = vertex_count;
  // mt19937_64 output is fully specified by the standard; raw modulo keeps
  // the sequence identical across platforms (distribution objects are not).
  std::mt19937_64 gen(seed);
  std::vector<std::size_t> pruefer(n - 2);
  for (auto& x : pruefer) x = static_cast<std::size_t>(gen() % n);

  std::vector<int> deg(n, 1);
  for (std::size_t x : pruefer) ++deg[x];

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(n - 1);
  std::size_t ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  std::size_t leaf = ptr;
  for (std::size_t x : pruefer) {
    edges.emplace_back(static_cast<Vertex>(leaf), static_cast<Vertex>(x));
    if (--deg[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(static_cast<Vertex>(leaf), static_cast<Vertex>(n - 1));
  return Tree::from_edges(edges);
}

}  // namespace latdim
