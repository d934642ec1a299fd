#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rlab/errors.hpp"
#include "rlab/hypergraph.hpp"

using namespace rlab;

TEST_CASE("K3 has six labeled triangles") {
  auto g = Hypergraph::build(3, 2, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(count_labeled_copies(g, MotifSpec::triangle()) == 6);
  CHECK(triangle_count(g) == 6);
  CHECK(count_labeled_copies(g, MotifSpec::single_edge(2)) == 6);
}

TEST_CASE("K4 counts") {
  auto g = Hypergraph::build(4, 2, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(triangle_count(g) == 24);
  CHECK(count_labeled_copies(g, MotifSpec::clique(2, 4)) == 24);
  // Opposite corners of the 4-cycle may coincide: trace(A^4) = 3^4 + 3.
  CHECK(count_labeled_copies(g, MotifSpec::cycle(4)) == 84);
}

TEST_CASE("3-uniform K4 contains 24 labeled copies of itself") {
  std::vector<Edge> e = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  auto g = Hypergraph::build(4, 3, e);
  CHECK(count_labeled_copies(g, MotifSpec::named("k4-3")) == 24);
}

TEST_CASE("build normalizes and rejects bad edges") {
  auto g = Hypergraph::build(4, 2, {{2, 1}, {1, 2}, {3, 0}});
  CHECK(g.edge_count() == 2);
  CHECK(g.edges()[0] == Edge{0, 3});
  CHECK(g.edges()[1] == Edge{1, 2});
  CHECK_THROWS_AS(Hypergraph::build(3, 2, {{0, 3}}), InputError);
  CHECK_THROWS_AS(Hypergraph::build(3, 2, {{1, 1}}), InputError);
  CHECK_THROWS_AS(Hypergraph::build(3, 2, {{0, 1, 2}}), InputError);
  CHECK_THROWS_AS(MotifSpec::make(2, 3, {}), InputError);
  CHECK_NOTHROW(MotifSpec::make(2, 3, {}, true));
  CHECK_THROWS_AS(MotifSpec::named("dodecahedron"), InputError);
}

TEST_CASE("copy counts match the brute-force counter") {
  std::mt19937_64 rng(3);
  const std::vector<MotifSpec> motifs = {MotifSpec::triangle(), MotifSpec::path(2), MotifSpec::path(3),
                                         MotifSpec::cycle(4), MotifSpec::clique(2, 4),
                                         MotifSpec::make(2, 4, {{0, 1}, {2, 3}})};
  for (int t = 0; t < 30; ++t) {
    auto g = oracle::random_graph(rng, 3 + t % 6, 2, 0.5);
    for (const auto& m : motifs) {
      CHECK(count_labeled_copies(g, m) == oracle::copies(g, m));
      CHECK(count_labeled_copies(g, m, 3) == oracle::copies(g, m));
    }
    CHECK(triangle_count(g) == oracle::copies(g, MotifSpec::triangle()));
  }
  for (int t = 0; t < 10; ++t) {
    auto g = oracle::random_graph(rng, 4 + t % 3, 3, 0.6);
    CHECK(count_labeled_copies(g, MotifSpec::named("k4-3")) == oracle::copies(g, MotifSpec::named("k4-3")));
    CHECK(count_labeled_copies(g, MotifSpec::single_edge(3)) == oracle::copies(g, MotifSpec::single_edge(3)));
  }
}

TEST_CASE("counts are invariant under relabeling") {
  std::mt19937_64 rng(8);
  auto g = random_hypergraph(12, 2, 0.5, 4);
  std::vector<Vertex> perm(12);
  for (Vertex i = 0; i < 12; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  auto h = g.relabeled(perm);
  CHECK(h.edge_count() == g.edge_count());
  CHECK(triangle_count(h) == triangle_count(g));
  CHECK(count_labeled_copies(h, MotifSpec::cycle(4)) == count_labeled_copies(g, MotifSpec::cycle(4)));
}

TEST_CASE("random hypergraphs are seed-determined") {
  CHECK(random_hypergraph(30, 2, 0.4, 9) == random_hypergraph(30, 2, 0.4, 9));
  CHECK_FALSE(random_hypergraph(30, 2, 0.4, 9) == random_hypergraph(30, 2, 0.4, 10));
  CHECK(random_hypergraph(10, 2, 0.0, 1).edge_count() == 0);
  CHECK(random_hypergraph(10, 2, 1.0, 1).edge_count() == 45);
  CHECK(random_hypergraph(8, 3, 1.0, 1).edge_count() == 56);
}

TEST_CASE("file round trip") {
  auto g = random_hypergraph(9, 3, 0.3, 2);
  std::stringstream ss;
  write_hypergraph(ss, g);
  CHECK(read_hypergraph(ss) == g);
  std::istringstream in("# comment\n2 4\n0 1 # trailing\n\n2 3\n");
  auto h = read_hypergraph(in);
  CHECK(h.n() == 4);
  CHECK(h.edge_count() == 2);
  std::istringstream bad("2 3\n0 1 2\n");
  CHECK_THROWS_AS(read_hypergraph(bad), InputError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_hypergraph(empty), InputError);
}

TEST_CASE("without removes exactly the listed edges") {
  auto g = Hypergraph::build(4, 2, {{0, 1}, {1, 2}, {2, 3}});
  auto h = g.without({{1, 2}});
  CHECK(h.edge_count() == 2);
  CHECK_FALSE(h.adjacent(1, 2));
  CHECK(h.adjacent(0, 1));
  std::vector<Vertex> e12 = {1, 2};
  CHECK(g.has_edge(e12));
  std::vector<Vertex> e21 = {2, 1};
  CHECK(g.contains_set(e21));
}
