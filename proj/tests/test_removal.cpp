#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rlab/removal.hpp"

using namespace rlab;

namespace {

Hypergraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
  return Hypergraph::build(n, 2, e);
}

Hypergraph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) e.push_back({u, static_cast<Vertex>(a + v)});
  return Hypergraph::build(a + b, 2, e);
}

// Triangles {3i, 3i+1, 3i+2} joined in a path by extra edges that close no triangle.
Hypergraph disjoint_triangles(std::size_t t) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < t; ++i) {
    e.push_back({3 * i, 3 * i + 1});
    e.push_back({3 * i, 3 * i + 2});
    e.push_back({3 * i + 1, 3 * i + 2});
    if (i > 0) e.push_back({3 * i - 1, 3 * i});
  }
  return Hypergraph::build(3 * t, 2, e);
}

}  // namespace

TEST_CASE("verify_free") {
  auto k4 = complete(4);
  auto v = verify_free(k4, MotifSpec::triangle());
  CHECK_FALSE(v.free);
  CHECK(v.count == 24);
  CHECK(verify_free(Hypergraph::build(5, 2, {}), MotifSpec::triangle()).free);
}

TEST_CASE("greedy removal") {
  auto bip = complete_bipartite(3, 4);
  auto r0 = remove_copies_greedy(bip, MotifSpec::triangle());
  CHECK(r0.deleted.empty());
  CHECK(r0.verification.free);

  auto k4 = complete(4);
  auto r = remove_copies_greedy(k4, MotifSpec::triangle());
  CHECK(r.verification.free);
  CHECK(r.deleted.size() <= 3);
  CHECK(r.deleted.size() == oracle::min_removal(k4, MotifSpec::triangle()));
  CHECK(r.deleted.front() == Edge{0, 1});
  CHECK(r.budget_constant == 4 * 2 * 3);

  for (std::size_t t = 1; t <= 6; ++t) {
    auto g = disjoint_triangles(t);
    CHECK(remove_copies_greedy(g, MotifSpec::triangle()).deleted.size() == t);
  }
}

TEST_CASE("greedy on other motifs and 3-uniform inputs") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 8; ++t) {
    auto g = oracle::random_graph(rng, 8, 2, 0.5);
    for (const auto& m : {MotifSpec::cycle(4), MotifSpec::path(2), MotifSpec::clique(2, 4)}) {
      auto r = remove_copies_greedy(g, m);
      CHECK(r.verification.free);
      CHECK(oracle::copies(r.graph, m) == 0);
      CHECK(r.graph.edge_count() + r.deleted.size() == g.edge_count());
    }
    auto h = random_hypergraph(9, 3, 0.4, static_cast<std::uint64_t>(t));
    auto r = remove_copies_greedy(h, MotifSpec::named("k4-3"));
    CHECK(oracle::copies(r.graph, MotifSpec::named("k4-3")) == 0);
  }
}

TEST_CASE("greedy stays within one of optimal on tiny graphs") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 40; ++t) {
    auto g = oracle::random_graph(rng, 5, 2, 0.7);
    const auto opt = oracle::min_removal(g, MotifSpec::triangle());
    const auto got = remove_copies_greedy(g, MotifSpec::triangle()).deleted.size();
    CHECK(got >= opt);
    CHECK(got <= opt + 1);
  }
}

TEST_CASE("poll clustering") {
  auto kn = complete(12);
  auto c = poll_clusters(kn, 4, 3);
  CHECK(c.polls.size() == 4);
  CHECK(c.members.size() == 1);

  auto bip = complete_bipartite(10, 10);
  auto cb = poll_clusters(bip, 6, 2);
  CHECK(cb.members.size() == 2);
  CHECK(cb.cluster_of[0] != cb.cluster_of[10]);

  auto c0 = poll_clusters(bip, 0, 2);
  CHECK(c0.members.size() == 1);
  CHECK(poll_clusters(bip, 6, 2).cluster_of == cb.cluster_of);
}

TEST_CASE("partition removal") {
  auto bip = complete_bipartite(6, 7);
  auto r = remove_triangles_partition(bip, 6, 0.3, 1);
  CHECK(r.phase4_deletions == 0);
  CHECK(r.verification.free);

  auto g = random_hypergraph(60, 2, 0.5, 11);
  auto a = remove_triangles_partition(g, 6, 0.3, 5);
  auto b = remove_triangles_partition(g, 6, 0.3, 5, 4);
  CHECK(a.verification.free);
  CHECK(a.deleted == b.deleted);
  CHECK(a.phase3_deletions == b.phase3_deletions);
  CHECK(triangle_count(a.graph) == 0);

  // One cluster: a global density rule, so a dense graph keeps its edges for phase 4.
  auto one = remove_triangles_partition(g, 0, 0.3, 5);
  CHECK(one.clusters == 1);
  CHECK(one.phase3_deletions == 0);
  CHECK(one.verification.free);
}

TEST_CASE("strong removal") {
  auto bip = complete_bipartite(10, 10);
  auto s = strong_removal_partition(bip, 6, 0.3, 4);
  CHECK(s.blowup_triangle_free);
  CHECK(s.partition.clustering.members.size() == 2);
  CHECK(s.partition.demoted.empty());
  CHECK(s.symmetric_difference == 0);

  auto empty = strong_removal_partition(Hypergraph::build(8, 2, {}), 3, 0.3, 1);
  CHECK(empty.symmetric_difference == 0);
  CHECK(empty.blowup.edge_count() == 0);

  auto kn = complete(9);
  auto sk = strong_removal_partition(kn, 4, 0.3, 2);
  CHECK(sk.initial_complete_blocks == 1);
  CHECK(sk.partition.demoted.size() == 1);
  CHECK(sk.blowup.edge_count() == 0);
  CHECK(sk.symmetric_difference == kn.edge_count());
  CHECK(sk.blowup_triangle_free);

  auto g = random_hypergraph(40, 2, 0.5, 3);
  auto sg = strong_removal_partition(g, 5, 0.3, 3);
  CHECK(sg.blowup_triangle_free);
  CHECK(triangle_count(sg.blowup) == 0);
}

TEST_CASE("reports") {
  auto r = remove_copies_greedy(complete(4), MotifSpec::triangle());
  const auto j = r.to_json(true);
  CHECK(j.at("residual_copies") == 0);
  CHECK(j.at("verified_free") == true);
  CHECK(j.contains("deleted"));
  CHECK_FALSE(r.to_json(false).contains("deleted"));
}
