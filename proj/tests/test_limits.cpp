#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rlab/errors.hpp"
#include "rlab/limits.hpp"
#include "rlab/probspace.hpp"

using namespace rlab;
using oracle::frac;

namespace {

Hypergraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
  return Hypergraph::build(n, 2, e);
}

Hypergraph two_cliques(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = u + 1; v < a; ++v) e.push_back({u, v});
  for (Vertex u = 0; u < b; ++u)
    for (Vertex v = u + 1; v < b; ++v) e.push_back({static_cast<Vertex>(a + u), static_cast<Vertex>(a + v)});
  return Hypergraph::build(a + b, 2, e);
}

// The same defect computed on the product space V^3 with the probability engine.
Rational defect_via_engine(const Hypergraph& g, const std::vector<Vertex>& polls) {
  const std::size_t n = g.n();
  auto space = ExactSpace::uniform(n * n * n);
  std::vector<std::size_t> l13(n * n * n), l23(n * n * n), lsig(n * n * n);
  for (std::size_t p = 0; p < n * n * n; ++p) {
    const auto x1 = static_cast<Vertex>(p / (n * n)), x2 = static_cast<Vertex>((p / n) % n), x3 = static_cast<Vertex>(p % n);
    l13[p] = x1 != x3 && g.adjacent(x1, x3);
    l23[p] = x2 != x3 && g.adjacent(x2, x3);
    std::size_t sig = 0;
    for (auto v : polls) sig = 2 * sig + (v != x3 && g.adjacent(v, x3));
    lsig[p] = sig;
  }
  return independence_defect(ExactFactor::from_labels(space, l13), ExactFactor::from_labels(space, l23),
                             ExactFactor::from_labels(space, lsig));
}

}  // namespace

TEST_CASE("density vectors") {
  const auto e12 = RegularEvent::parse("A(1,2)");
  for (std::size_t n : {2u, 5u, 9u}) {
    const auto row = density_vector(complete(n), {e12});
    CHECK(row.exact[0] == frac(static_cast<long>(n - 1), static_cast<long>(n)));
  }
  const auto zeros = density_vector(Hypergraph::build(5, 2, {}), {e12, RegularEvent::parse("A(1,2) & A(2,3)")});
  CHECK(zeros.exact[0] == 0);
  CHECK(zeros.exact[1] == 0);
}

TEST_CASE("density table modes and csv") {
  const std::vector<Hypergraph> graphs = {complete(3), complete(4)};
  const std::vector<RegularEvent> events = {RegularEvent::parse("A(1,2)")};
  const auto t = density_table(graphs, events);
  CHECK(t.is_exact());
  std::ostringstream csv;
  t.write_csv(csv);
  CHECK(csv.str() == "row,\"A(1,2)\"\n0,2/3\n1,3/4\n");

  DensityRowOptions mc;
  mc.mode = DensityMode::mc;
  mc.samples = 20000;
  mc.seed = 4;
  const auto m = density_table(graphs, events, mc);
  CHECK_FALSE(m.is_exact());
  CHECK(m.value[1][0] == doctest::Approx(0.75).epsilon(0.03));
  CHECK(m.standard_error[1][0] > 0);
}

TEST_CASE("diagonal subsequence") {
  DensityTable alt;
  alt.columns = {"A(1,2)"};
  for (int r = 0; r < 10; ++r) alt.value.push_back({static_cast<double>(r % 2)});
  const auto s = diagonal_subsequence(alt, 0.1);
  CHECK(s.rows == std::vector<std::size_t>{0, 2, 4, 6, 8});
  CHECK_FALSE(s.degenerate);

  DensityTable flat;
  flat.columns = {"a", "b"};
  for (int r = 0; r < 4; ++r) flat.value.push_back({0.5, 0.25});
  CHECK(diagonal_subsequence(flat, 0.1).rows.size() == 4);

  DensityTable cauchy;
  cauchy.columns = {"a", "b"};
  for (int r = 0; r < 6; ++r) cauchy.value.push_back({0.31 + 0.001 * r, 0.52 - 0.001 * r});
  CHECK(diagonal_subsequence(cauchy, 0.1).rows.size() == 6);

  DensityTable spread;
  spread.columns = {"a"};
  for (int r = 0; r < 3; ++r) spread.value.push_back({0.3 * r});
  CHECK(diagonal_subsequence(spread, 0.1).degenerate);
  CHECK_THROWS_AS(diagonal_subsequence(spread, 0.0), InputError);
}

TEST_CASE("polling defect") {
  auto kn = complete(8);
  CHECK(polling_defect(kn, {}) == 0);
  CHECK(polling_defect(kn, {1, 2}) == 0);
  auto cl = two_cliques(3, 5);
  const auto d0 = polling_defect(cl, {});
  CHECK(d0 > 0);
  // A poll is not adjacent to itself, so two polls per clique are needed to separate them.
  CHECK(polling_defect(cl, {0}) > 0);
  CHECK(polling_defect(cl, {0, 3}) > 0);
  CHECK(polling_defect(cl, {0, 1, 3, 4}) == 0);
  // Equal cliques have equal degrees, so there is no defect to remove.
  CHECK(polling_defect(two_cliques(4, 4), {}) == 0);
}

TEST_CASE("polling defect matches the probability engine") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 12; ++t) {
    auto g = oracle::random_graph(rng, 3 + t % 4, 2, 0.5);
    std::vector<Vertex> polls;
    for (std::size_t s = 0; s < static_cast<std::size_t>(t % 3); ++s) polls.push_back(static_cast<Vertex>(rng() % g.n()));
    CHECK(polling_defect(g, polls) == defect_via_engine(g, polls));
  }
}

TEST_CASE("regularity curve") {
  auto kn = complete(10);
  auto flat = regularity_defect_curve(kn, {0, 1, 4}, 3, 1);
  for (const auto& row : flat.defect)
    for (const auto& d : row) CHECK(d == 0);

  auto cl = two_cliques(6, 14);
  auto c = regularity_defect_curve(cl, {0, 4}, 20, 7);
  REQUIRE(c.mean_defect.size() == 2);
  CHECK(c.mean_defect[0] > 0);
  CHECK(c.mean_defect[1] < c.mean_defect[0]);
  for (std::size_t t = 0; t < 20; ++t) CHECK(c.defect[1][t] <= c.defect[0][t]);

  auto g = random_hypergraph(50, 2, 0.5, 2);
  auto a = regularity_defect_curve(g, {0, 2, 8}, 5, 9, 1);
  auto b = regularity_defect_curve(g, {0, 2, 8}, 5, 9, 8);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(trial_polls(50, 8, 9, 3).size() == 8);
  CHECK(trial_polls(50, 8, 9, 3) == trial_polls(50, 8, 9, 3));
}
