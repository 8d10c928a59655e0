#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "latdim/embedding.hpp"
#include "latdim/tree.hpp"
#include "latdim/verify.hpp"

using namespace latdim;

namespace {

std::size_t inner_edge_count(const Tree& t) {
  std::size_t count = 0;
  for (const auto& [u, v] : t.edges())
    if (t.degree(u) >= 2 && t.degree(v) >= 2) ++count;
  return count;
}

}  // namespace

TEST_CASE("full verification accepts the star construction") {
  Tree t = parse_edge_list("0 1\n0 2\n0 3\n0 4");
  IsometryReport r = verify_isometric(t, embed_tree(t));
  CHECK(r.passed);
  CHECK(r.checked_pairs == 10);
  CHECK(!r.sampled);
  CHECK(!r.first_violation);
}

TEST_CASE("full verification reports colliding leaves") {
  Tree t = parse_edge_list("0 1\n0 2\n0 3\n0 4");
  // Leaves 1 and 2 both at (1,0).
  Embedding bad(2, {0, 1, 2, 3, 4},
                {{0, 0}, {1, 0}, {1, 0}, {0, 1}, {0, -1}}, 0);
  IsometryReport r = verify_isometric(t, bad);
  CHECK(!r.passed);
  REQUIRE(r.first_violation);
  CHECK(r.first_violation->u == 1);
  CHECK(r.first_violation->v == 2);
  CHECK(r.first_violation->tree_distance == 2);
  CHECK(r.first_violation->l1_distance == 0);
}

TEST_CASE("full verification reports a stretched edge") {
  Tree t = parse_edge_list("0 1\n1 2");
  Embedding bad(1, {0, 1, 2}, {{0}, {1}, {3}}, 0);
  IsometryReport r = verify_isometric(t, bad);
  CHECK(!r.passed);
  REQUIRE(r.first_violation);
  CHECK(r.first_violation->u == 0);  // (0,2) precedes (1,2) and also fails
  CHECK(r.first_violation->v == 2);
  CHECK(r.first_violation->tree_distance == 2);
  CHECK(r.first_violation->l1_distance == 3);
}

TEST_CASE("verification rejects mismatched vertex sets") {
  Tree t = parse_edge_list("0 1\n1 2");
  Embedding other(1, {0, 1, 5}, {{0}, {1}, {2}}, 0);
  CHECK_THROWS_AS(verify_isometric(t, other), std::invalid_argument);
}

TEST_CASE("threaded verification matches single-threaded results") {
  std::mt19937_64 gen(51);
  for (int trial = 0; trial < 10; ++trial) {
    Tree t = random_tree(2 + gen() % 60, gen());
    Embedding e = embed_tree(t);
    IsometryReport serial = verify_isometric(t, e, 1);
    IsometryReport parallel = verify_isometric(t, e, 4);
    CHECK(serial.passed == parallel.passed);
    CHECK(serial.checked_pairs == parallel.checked_pairs);
  }
  // And on a deliberately broken embedding the violation is identical.
  Tree t = parse_edge_list("0 1\n1 2\n2 3\n3 4");
  Embedding bad(1, {0, 1, 2, 3, 4}, {{0}, {1}, {2}, {2}, {3}}, 0);
  IsometryReport serial = verify_isometric(t, bad, 1);
  IsometryReport parallel = verify_isometric(t, bad, 3);
  REQUIRE(serial.first_violation);
  REQUIRE(parallel.first_violation);
  CHECK(serial.first_violation->u == parallel.first_violation->u);
  CHECK(serial.first_violation->v == parallel.first_violation->v);
}

TEST_CASE("sampled verification checks every edge") {
  Tree t = parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 5");
  Embedding e = embed_tree(t);
  IsometryReport r = verify_isometric_sampled(t, e, 7, 99);
  CHECK(r.passed);
  CHECK(r.sampled);
  CHECK(r.checked_pairs == t.edge_count() + 7);

  // Plant a stretch across one edge; even 0 extra pairs must catch it.
  Embedding bad(1, {0, 1, 2, 3, 4, 5}, {{0}, {1}, {2}, {4}, {5}, {6}}, 0);
  IsometryReport caught = verify_isometric_sampled(t, bad, 0, 99);
  CHECK(!caught.passed);
  REQUIRE(caught.first_violation);
  CHECK(caught.first_violation->u == 2);
  CHECK(caught.first_violation->v == 3);
}

TEST_CASE("compact sampled verification agrees with the dense check") {
  std::mt19937_64 gen(53);
  for (int trial = 0; trial < 25; ++trial) {
    Tree t = random_tree(2 + gen() % 60, gen());
    CompactEmbedding ce = embed_tree_compact(t);
    IsometryReport r = verify_compact_sampled(t, ce, 64, trial);
    CHECK(r.passed);
    CHECK(r.checked_pairs == t.edge_count() + 64);
  }
}

TEST_CASE("compact sampled verification catches a corrupted axis") {
  // Assigning both removed paths' axes to the same coordinate creates
  // cancellation along some path, which the pair sample must detect.
  Tree t = parse_edge_list("0 1\n0 2\n0 3\n3 4\n3 5");
  CompactEmbedding ce = embed_tree_compact(t);
  for (auto& a : ce.axis)
    if (a == 1) a = 0;
  ce.dimension = 1;
  IsometryReport r = verify_compact_sampled(t, ce, 32, 7);
  CHECK(!r.passed);
}

TEST_CASE("contracting one path edge collapses its slab") {
  Tree t = parse_edge_list("0 1\n1 2\n2 3");
  auto [ct, ce, step] = contract_inner_edge(t, embed_tree(t), {1, 2});
  CHECK(ct.vertices() == std::vector<Vertex>{0, 1, 3});
  CHECK(ct.edges() ==
        std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {1, 3}});
  CHECK(ce.point(0)[0] == 0);
  CHECK(ce.point(1)[0] == 1);
  CHECK(ce.point(3)[0] == 2);
  CHECK(step.u == 1);
  CHECK(step.v == 2);
  CHECK(step.axis == 0);
  CHECK(step.resulting_vertex == 1);
  CHECK(verify_isometric(ct, ce).passed);
}

TEST_CASE("contracting the central edge of the two-branching tree gives a star") {
  Tree t = parse_edge_list("0 1\n0 2\n0 3\n3 4\n3 5");
  auto [ct, ce, step] = contract_inner_edge(t, embed_tree(t), {0, 3});
  CHECK(ct.vertex_count() == 5);
  CHECK(ct.leaves().size() == 4);
  CHECK(ct.degree(0) == 4);
  CHECK(verify_isometric(ct, ce).passed);
  CHECK(step.resulting_vertex == 0);
}

TEST_CASE("contraction preconditions") {
  Tree t = parse_edge_list("0 1\n1 2\n2 3");
  Embedding e = embed_tree(t);
  CHECK_THROWS_AS(contract_inner_edge(t, e, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(contract_inner_edge(t, e, {0, 2}), std::invalid_argument);

  // Non-isometric coordinates: endpoints two steps apart.
  Embedding bad(1, {0, 1, 2, 3}, {{0}, {1}, {3}, {4}}, 0);
  CHECK_THROWS_AS(contract_inner_edge(t, bad, {1, 2}), VerificationError);
}

TEST_CASE("slab uniqueness violations are detected") {
  // A 2x1 grid drawn over a path: edge (1,2) and edge (4,5)... build an
  // embedding of a 6-path that folds back and reuses a slab.
  Tree t = parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 5");
  Embedding folded(2, {0, 1, 2, 3, 4, 5},
                   {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}}, 0);
  // (0,1) and (4,5) both cross axis-0 slab between 0 and 1; the embedding is
  // not isometric (distance(0,5)=5 vs l1=1) and the contraction notices.
  CHECK_THROWS_AS(contract_inner_edge(t, folded, {1, 2}), VerificationError);
}

TEST_CASE("contract_to_star on a star is trivial") {
  Tree t = parse_edge_list("0 1\n0 2\n0 3");
  LowerBoundCertificate cert = contract_to_star(t, embed_tree(t));
  CHECK(cert.steps.empty());
  CHECK(cert.final_star_leaf_count == 3);
  CHECK(cert.final_dimension == 2);
  CHECK(cert.bound == 2);
}

TEST_CASE("contract_to_star collapses the two-branching tree in one step") {
  Tree t = parse_edge_list("0 1\n0 2\n0 3\n3 4\n3 5");
  LowerBoundCertificate cert = contract_to_star(t, embed_tree(t));
  CHECK(cert.steps.size() == 1);
  CHECK(cert.final_star_leaf_count == 4);
  CHECK(cert.bound == 2);
  CHECK(cert.final_dimension == 2);
  CHECK(cert.leaf_directions.size() == 4);
}

TEST_CASE("contract_to_star on a six-leaf caterpillar certifies dimension 3") {
  Tree t = parse_edge_list("1 2\n2 3\n1 4\n1 5\n2 6\n2 7\n3 8\n3 9");
  REQUIRE(t.leaves().size() == 6);
  Embedding e = embed_tree(t);
  REQUIRE(e.dimension() == 3);
  LowerBoundCertificate cert = contract_to_star(t, e);
  CHECK(cert.steps.size() == 2);  // inner edges (1,2) and (2,3)
  CHECK(cert.final_star_leaf_count == 6);
  CHECK(cert.bound == 3);
  CHECK(cert.leaf_directions.size() == 6);
}

TEST_CASE("contract_to_star handles paths, ending at a 2-leaf star") {
  Tree t = parse_edge_list("0 1\n1 2\n2 3");
  LowerBoundCertificate cert = contract_to_star(t, embed_tree(t));
  CHECK(cert.steps.size() == 1);
  CHECK(cert.final_star_leaf_count == 2);
  CHECK(cert.bound == 1);
  CHECK_THROWS_AS(contract_to_star(Tree::from_edges({{0, 1}}),
                                   embed_tree(Tree::from_edges({{0, 1}}))),
                  std::invalid_argument);
}

TEST_CASE("certificates on representative trees: steps, soundness, bound") {
  for (const auto& t : corpus::isomorphism_representatives_up_to(9)) {
    if (t.vertex_count() < 3) continue;
    Embedding e = embed_tree(t);
    const std::size_t inner = inner_edge_count(t);
    const std::size_t n = t.leaves().size();

    // Step-by-step: isometry and leaf count are preserved at every stage.
    Tree cur = t;
    Embedding cur_e = e;
    std::size_t steps = 0;
    for (;;) {
      std::optional<std::pair<Vertex, Vertex>> pick;
      for (const auto& [p, q] : cur.edges())
        if (cur.degree(p) >= 2 && cur.degree(q) >= 2) {
          pick = {p, q};
          break;
        }
      if (!pick) break;
      auto [nt, ne, st] = contract_inner_edge(cur, cur_e, *pick);
      REQUIRE(nt.leaves().size() == n);
      REQUIRE(verify_isometric(nt, ne).passed);
      cur = std::move(nt);
      cur_e = std::move(ne);
      ++steps;
    }
    REQUIRE(steps == inner);

    LowerBoundCertificate cert = contract_to_star(t, e);
    REQUIRE(cert.steps.size() == inner);
    REQUIRE(cert.final_star_leaf_count == n);
    REQUIRE(cert.bound == lattice_dimension(t));
    REQUIRE(cert.bound <= cert.final_dimension);
    REQUIRE(cert.leaf_directions.size() == n);
    REQUIRE(n <= 2 * static_cast<std::size_t>(cert.final_dimension));
  }
}

TEST_CASE("brute force matches the formula on the named examples") {
  CHECK(brute_force_min_dimension(parse_edge_list("0 1\n0 2\n0 3"), 3) == 2);
  CHECK(brute_force_min_dimension(parse_edge_list("0 1\n1 2\n2 3\n3 4"), 3) ==
        1);
  Tree k15 = parse_edge_list("0 1\n0 2\n0 3\n0 4\n0 5");
  CHECK(brute_force_min_dimension(k15, 3) == 3);
  CHECK(brute_force_min_dimension(k15, 2) == std::nullopt);
  CHECK(brute_force_min_dimension(Tree::single(0), 3) == 0);
  CHECK_THROWS_AS(brute_force_min_dimension(random_tree(11, 1), 3),
                  std::invalid_argument);
}

TEST_CASE("brute force agrees with the construction on all small trees") {
  for (const auto& t : corpus::isomorphism_representatives_up_to(9)) {
    int expected = lattice_dimension(t);
    CHECK(brute_force_min_dimension(t, std::max(expected, 1)) ==
          (t.vertex_count() == 1 ? 0 : expected));
    CHECK(embed_tree(t).dimension() == expected);
  }

  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 500; ++trial) {
    Tree t = random_tree(1 + gen() % 8, gen());
    int expected = lattice_dimension(t);
    CHECK(brute_force_min_dimension(t, 5) ==
          (t.vertex_count() == 1 ? 0 : expected));
  }
}
