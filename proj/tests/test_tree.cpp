#include <doctest.h>

#include <random>
#include <sstream>

#include "corpus.hpp"
#include "latdim/tree.hpp"

using namespace latdim;

TEST_CASE("parse smallest nontrivial edge list") {
  Tree t = parse_edge_list("0 1\n1 2");
  CHECK(t.vertex_count() == 3);
  CHECK(t.edge_count() == 2);
  CHECK(t.vertices() == std::vector<Vertex>{0, 1, 2});
  CHECK(t.neighbors(1) == std::vector<Vertex>{0, 2});
}

TEST_CASE("parse star with forced adjacency") {
  Tree t = parse_edge_list("0 1\n0 2\n0 3");
  CHECK(t.degree(0) == 3);
  CHECK(t.leaves() == std::vector<Vertex>{1, 2, 3});
}

TEST_CASE("parse rejects cycles") {
  CHECK_THROWS_WITH_AS(parse_edge_list("0 1\n1 2\n2 0"),
                       doctest::Contains("cycle"), ParseError);
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_edge_list("0 1\n1 1"), ParseError);      // self-loop
  CHECK_THROWS_AS(parse_edge_list("0 1\n1 0"), ParseError);      // duplicate
  CHECK_THROWS_AS(parse_edge_list("0 1\n2 3"), ParseError);      // disconnected
  CHECK_THROWS_AS(parse_edge_list(""), ParseError);              // empty
  CHECK_THROWS_AS(parse_edge_list("0 1\n1 -2"), ParseError);     // negative
  CHECK_THROWS_AS(parse_edge_list("0 1\n1 2 3"), ParseError);    // extra token
  CHECK_THROWS_AS(parse_edge_list("0 1\nx y"), ParseError);      // not numbers

  try {
    parse_edge_list("0 1\n\nbogus line\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("parse comments, blank lines, isolated vertex") {
  Tree t = parse_edge_list("# a comment\n\n0 1\n\n# another\n1 2\n");
  CHECK(t.vertex_count() == 3);

  Tree single = parse_edge_list("# vertex 7\n");
  CHECK(single.vertex_count() == 1);
  CHECK(single.vertices() == std::vector<Vertex>{7});
  CHECK(single.leaves().empty());

  // A vertex declaration already covered by an edge is harmless; an
  // uncovered one makes the input disconnected.
  CHECK(parse_edge_list("# vertex 0\n0 1\n").vertex_count() == 2);
  CHECK_THROWS_AS(parse_edge_list("# vertex 5\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("# vertex 1\n# vertex 2\n"), ParseError);
}

TEST_CASE("leaves") {
  CHECK(parse_edge_list("0 1\n1 2").leaves() == std::vector<Vertex>{0, 2});
  CHECK(Tree::single(0).leaves().empty());
  CHECK(Tree::from_edges({{0, 1}}).leaves() == std::vector<Vertex>{0, 1});
}

TEST_CASE("tree distance") {
  Tree path = parse_edge_list("0 1\n1 2\n2 3");
  CHECK(path.distance(0, 3) == 3);
  CHECK(path.distance(3, 0) == 3);
  CHECK(path.distance(2, 2) == 0);

  Tree star = parse_edge_list("0 1\n0 2\n0 3\n0 4");
  CHECK(star.distance(1, 4) == 2);
  CHECK(star.distance(0, 4) == 1);

  CHECK_THROWS_AS(path.distance(0, 99), std::invalid_argument);
}

TEST_CASE("all pairs distances") {
  auto d = all_pairs_distances(parse_edge_list("0 1\n1 2"));
  CHECK(d.size() == 3);
  CHECK(d.at({0, 1}) == 1);
  CHECK(d.at({0, 2}) == 2);
  CHECK(d.at({1, 2}) == 1);

  CHECK(all_pairs_distances(Tree::single(3)).empty());

  auto s = all_pairs_distances(parse_edge_list("0 1\n0 2\n0 3"));
  for (const auto& [pair, dist] : s)
    CHECK(dist == (pair.first == 0 ? 1 : 2));
}

TEST_CASE("hanging path") {
  Tree star = parse_edge_list("0 1\n0 2\n0 3");
  HangingPath hp = hanging_path(star, 1);
  CHECK(hp.anchor == 0);
  CHECK(hp.length == 1);
  CHECK(hp.path == std::vector<Vertex>{0, 1});

  // Broom: path 0-1-2 plus leaves 3,4 hanging off vertex 2.
  Tree broom = parse_edge_list("0 1\n1 2\n2 3\n2 4");
  hp = hanging_path(broom, 0);
  CHECK(hp.anchor == 2);
  CHECK(hp.path == std::vector<Vertex>{2, 1, 0});
  CHECK(hp.length == 2);

  Tree path = parse_edge_list("0 1\n1 2");
  CHECK_THROWS_AS(hanging_path(path, 0), std::invalid_argument);
  CHECK_THROWS_AS(hanging_path(broom, 2), std::invalid_argument);
}

TEST_CASE("classify") {
  CHECK(classify(parse_edge_list("0 1\n0 2\n0 3\n0 4\n0 5")).kind ==
        TreeShape::Spider);
  CHECK(classify(parse_edge_list("0 1\n0 2\n0 3\n0 4\n0 5")).center == 0);
  CHECK(classify(parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 5")).kind ==
        TreeShape::Path);
  CHECK(classify(parse_edge_list("0 1\n0 2\n0 3\n3 4\n3 5")).kind ==
        TreeShape::General);
  CHECK(classify(Tree::single(0)).kind == TreeShape::SingleVertex);
  CHECK(classify(Tree::from_edges({{0, 1}})).kind == TreeShape::Path);
}

TEST_CASE("classify agrees with a direct degree census") {
  for (const auto& t : corpus::isomorphism_representatives_up_to(8)) {
    std::size_t branching = 0;
    for (Vertex v : t.vertices())
      if (t.degree(v) > 2) ++branching;
    ShapeClass sc = classify(t);
    if (branching == 0)
      CHECK((sc.kind == TreeShape::Path || sc.kind == TreeShape::SingleVertex));
    else if (branching == 1)
      CHECK(sc.kind == TreeShape::Spider);
    else
      CHECK(sc.kind == TreeShape::General);
  }
}

TEST_CASE("random trees are deterministic and valid") {
  CHECK(random_tree(1, 7).vertex_count() == 1);
  CHECK(random_tree(2, 7).edges() ==
        std::vector<std::pair<Vertex, Vertex>>{{0, 1}});

  Tree a = random_tree(8, 42);
  Tree b = random_tree(8, 42);
  CHECK(a.edges() == b.edges());
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(random_tree(8, 43).edges() != a.edges());

  // Tree::from_edges would already have rejected anything non-tree shaped;
  // spot-check structure across many seeds anyway.
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Tree t = random_tree(7, seed);
    CHECK(t.vertex_count() == 7);
    CHECK(t.edge_count() == 6);
    CHECK(t.leaves().size() >= 2);
  }

  CHECK_THROWS_AS(random_tree(0, 1), std::invalid_argument);
}

TEST_CASE("distance is a metric on sampled trees") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + gen() % 63;
    Tree t = random_tree(n, gen());
    auto ids = t.vertices();
    for (int k = 0; k < 50; ++k) {
      Vertex u = ids[gen() % ids.size()];
      Vertex v = ids[gen() % ids.size()];
      int duv = t.distance(u, v);
      CHECK(duv == t.distance(v, u));
      CHECK((duv == 0) == (u == v));
    }
  }
}

TEST_CASE("hanging path length matches distance on sampled trees") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    Tree t = random_tree(3 + gen() % 30, gen());
    if (classify(t).kind == TreeShape::Path) continue;
    for (Vertex leaf : t.leaves()) {
      HangingPath hp = hanging_path(t, leaf);
      CHECK(t.distance(hp.anchor, leaf) == hp.length);
      CHECK(static_cast<int>(hp.path.size()) == hp.length + 1);
      for (std::size_t i = 1; i + 1 < hp.path.size(); ++i)
        CHECK(t.degree(hp.path[i]) == 2);
      CHECK(t.degree(hp.anchor) >= 3);
    }
  }
}

TEST_CASE("edge list serialization round-trips") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 25; ++trial) {
    Tree t = random_tree(1 + gen() % 40, gen());
    Tree back = parse_edge_list(to_edge_list(t));
    CHECK(back.vertices() == t.vertices());
    CHECK(back.edges() == t.edges());
  }
}

TEST_CASE("corpus helpers count what they should") {
  // Labeled trees: n^(n-2). Free trees on 1..9 vertices:
  // 1, 1, 1, 2, 3, 6, 11, 23, 47.
  std::size_t count = 0;
  corpus::for_each_labeled_tree(5, [&](const Tree&) { ++count; });
  CHECK(count == 125);
  count = 0;
  corpus::for_each_labeled_tree(6, [&](const Tree&) { ++count; });
  CHECK(count == 1296);

  CHECK(corpus::isomorphism_representatives(7).size() == 11);
  CHECK(corpus::isomorphism_representatives(8).size() == 23);
  CHECK(corpus::isomorphism_representatives(9).size() == 47);
}
