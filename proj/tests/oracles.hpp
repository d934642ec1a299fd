#pragma once

// Brute-force reference implementations for the tests. Nothing here calls
// the library's counting, evaluation or conditioning code; only plain data
// (edge lists, formula nodes, weights) crosses over.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rlab/event.hpp"
#include "rlab/hypergraph.hpp"
#include "rlab/rational.hpp"

namespace oracle {

using rlab::BigInt;
using rlab::Rational;

struct EdgeSet {
  unsigned d = 2;
  std::size_t n = 0;
  std::set<std::vector<std::uint32_t>> edges;

  explicit EdgeSet(const rlab::Hypergraph& g) : d(g.d()), n(g.n()), edges(g.edges().begin(), g.edges().end()) {}

  bool holds(std::vector<std::uint32_t> image) const {
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
    return edges.count(image) > 0;
  }
};

// Walks the formula nodes directly.
inline bool eval_node(const rlab::RegularEvent& e, std::uint32_t node, const std::vector<bool>& leaf) {
  const auto& nd = e.nodes()[node];
  switch (nd.op) {
    case rlab::RegularEvent::Op::leaf: return leaf[nd.a];
    case rlab::RegularEvent::Op::negate: return !eval_node(e, nd.a, leaf);
    case rlab::RegularEvent::Op::conj: return eval_node(e, nd.a, leaf) && eval_node(e, nd.b, leaf);
    case rlab::RegularEvent::Op::disj: return eval_node(e, nd.a, leaf) || eval_node(e, nd.b, leaf);
  }
  return false;
}

// Odometer over V^K.
template <class Fn>
void for_each_tuple(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::uint32_t> x(k, 0);
  if (n == 0) return;
  for (;;) {
    fn(x);
    std::size_t i = 0;
    while (i < k && ++x[i] == n) x[i++] = 0;
    if (i == k) return;
  }
}

inline BigInt embed_count(const rlab::Hypergraph& g, const rlab::RegularEvent& e) {
  const EdgeSet es(g);
  const std::size_t k = e.arity();
  BigInt hits = 0;
  std::vector<bool> leaf(e.leaves().size());
  for_each_tuple(g.n(), k, [&](const std::vector<std::uint32_t>& x) {
    for (std::size_t l = 0; l < leaf.size(); ++l) {
      std::vector<std::uint32_t> img;
      for (auto i : e.leaves()[l].indices) img.push_back(x[i - 1]);
      leaf[l] = es.holds(img);
    }
    if (eval_node(e, e.root(), leaf)) hits += 1;
  });
  return hits;
}

inline Rational embed_prob(const rlab::Hypergraph& g, const rlab::RegularEvent& e) {
  BigInt total = 1;
  for (std::size_t i = 0; i < e.arity(); ++i) total *= static_cast<unsigned long>(g.n());
  return rlab::make_rational(embed_count(g, e), total);
}

inline BigInt copies(const rlab::Hypergraph& g, const rlab::MotifSpec& m) {
  const EdgeSet es(g);
  BigInt hits = 0;
  for_each_tuple(g.n(), m.v0, [&](const std::vector<std::uint32_t>& x) {
    for (const auto& e : m.edges) {
      std::vector<std::uint32_t> img;
      for (auto v : e) img.push_back(x[v]);
      if (!es.holds(img)) return;
    }
    hits += 1;
  });
  return hits;
}

// |{(x, lambda)}| / (N L) with A[n] read as x + n*lambda mod N in A.
inline Rational furstenberg(const std::vector<bool>& a, std::size_t m, const rlab::RegularEvent& e) {
  const auto n = static_cast<std::int64_t>(a.size());
  const std::int64_t L = n / static_cast<std::int64_t>(m);
  long hits = 0;
  std::vector<bool> leaf(e.leaves().size());
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t lam = 1; lam <= L; ++lam) {
      for (std::size_t l = 0; l < leaf.size(); ++l) {
        const auto v = ((x + e.leaves()[l].offset * lam) % n + n) % n;
        leaf[l] = a[static_cast<std::size_t>(v)];
      }
      if (eval_node(e, e.root(), leaf)) ++hits;
    }
  return rlab::make_rational(hits, n * L);
}

inline rlab::Hypergraph random_graph(std::mt19937_64& rng, std::size_t n, unsigned d, double p) {
  std::vector<rlab::Edge> edges;
  std::bernoulli_distribution coin(p);
  std::vector<std::uint32_t> pick(d);
  // All d-subsets in lexicographic order.
  std::vector<std::uint32_t> c(d);
  for (unsigned i = 0; i < d; ++i) c[i] = i;
  if (d > n) return rlab::Hypergraph::build(n, d, {});
  for (;;) {
    if (coin(rng)) edges.push_back(c);
    int i = static_cast<int>(d) - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - d + static_cast<std::size_t>(i)) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < d; ++j) c[j] = c[j - 1] + 1;
  }
  return rlab::Hypergraph::build(n, d, std::move(edges));
}

// Random formula text over edge leaves of uniformity d on indices 1..k.
inline std::string random_formula(std::mt19937_64& rng, unsigned d, std::uint32_t k, int depth) {
  std::uniform_int_distribution<int> op(0, depth <= 0 ? 0 : 3);
  const int o = op(rng);
  if (o == 0) {
    std::vector<std::uint32_t> idx(k);
    for (std::uint32_t i = 0; i < k; ++i) idx[i] = i + 1;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::string s = "A(";
    for (unsigned i = 0; i < d; ++i) s += (i ? "," : "") + std::to_string(idx[i]);
    return s + ")";
  }
  if (o == 1) return "!(" + random_formula(rng, d, k, depth - 1) + ")";
  const std::string sep = o == 2 ? " & " : " | ";
  return "(" + random_formula(rng, d, k, depth - 1) + sep + random_formula(rng, d, k, depth - 1) + ")";
}

// Fewest edge deletions that leave no copy, by increasing subset size.
inline std::size_t min_removal(const rlab::Hypergraph& g, const rlab::MotifSpec& m) {
  const auto& edges = g.edges();
  const std::size_t e = edges.size();
  for (std::size_t size = 0; size <= e; ++size) {
    std::vector<bool> pick(e, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<rlab::Edge> del;
      for (std::size_t i = 0; i < e; ++i)
        if (pick[i]) del.push_back(edges[i]);
      if (copies(g.without(del), m) == 0) return size;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return e;
}


// Random weights with denominators up to 12 and roughly a fifth of the points null.
inline std::vector<Rational> random_weights(std::mt19937_64& rng, std::size_t points) {
  std::vector<Rational> w(points);
  Rational total = 0;
  for (auto& x : w) {
    x = rng() % 5 == 0 ? Rational(0) : rlab::make_rational(static_cast<long>(1 + rng() % 9), static_cast<long>(1 + rng() % 12));
    total += x;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  for (auto& x : w) x /= total;
  return w;
}

// Atom-wise weighted mean computed from raw labels; 0 on null atoms.
inline std::vector<Rational> cond_mean(const std::vector<Rational>& w, const std::vector<std::size_t>& labels,
                                       const std::vector<Rational>& f) {
  std::map<std::size_t, Rational> mass, sum;
  for (std::size_t p = 0; p < w.size(); ++p) {
    mass[labels[p]] += w[p];
    sum[labels[p]] += w[p] * f[p];
  }
  std::vector<Rational> out(w.size());
  for (std::size_t p = 0; p < w.size(); ++p) out[p] = mass[labels[p]] == 0 ? Rational(0) : Rational(sum[labels[p]] / mass[labels[p]]);
  return out;
}


// Plain grid as a boolean matrix, indexed [a][b] with wraparound.
struct Grid {
  std::size_t M = 0;
  std::vector<std::vector<bool>> in;
  bool at(std::int64_t a, std::int64_t b) const {
    const auto m = static_cast<std::int64_t>(M);
    return in[static_cast<std::size_t>(((a % m) + m) % m)][static_cast<std::size_t>(((b % m) + m) % m)];
  }
};

inline Grid random_grid(std::mt19937_64& rng, std::size_t M, unsigned percent) {
  Grid g{M, std::vector<std::vector<bool>>(M, std::vector<bool>(M))};
  for (auto& row : g.in)
    for (std::size_t b = 0; b < M; ++b) row[b] = rng() % 100 < percent;
  return g;
}

inline long ap_count(const std::vector<bool>& a, std::size_t k, bool exclude_degenerate) {
  const std::size_t n = a.size();
  long hits = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t r = exclude_degenerate ? 1 : 0; r < n; ++r) {
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) ok = a[(x + i * r) % n];
      hits += ok;
    }
  return hits;
}

inline long corner_count(const Grid& g, bool exclude_degenerate) {
  const auto M = static_cast<std::int64_t>(g.M);
  long hits = 0;
  for (std::int64_t x = 0; x < M; ++x)
    for (std::int64_t y = 0; y < M; ++y)
      for (std::int64_t r = exclude_degenerate ? 1 : 0; r < M; ++r)
        hits += g.at(x, y) && g.at(x + r, y) && g.at(x, y + r);
  return hits;
}

// T^p S^q x in A with T, S the unit shifts of the two coordinates.
inline bool shifted_in(const Grid& g, std::int64_t a, std::int64_t b, std::int64_t p, std::int64_t q) {
  return g.at(a + p, b + q);
}

inline Rational tripartite_lhs(const Grid& g, std::int64_t N) {
  const auto M = static_cast<std::int64_t>(g.M);
  long hits = 0;
  for (std::int64_t a = 0; a < M; ++a)
    for (std::int64_t b = 0; b < M; ++b)
      for (std::int64_t n1 = 1; n1 <= N; ++n1)
        for (std::int64_t n2 = 1; n2 <= N; ++n2)
          for (std::int64_t n3 = 1; n3 <= N; ++n3)
            hits += shifted_in(g, a, b, n1, n2) && shifted_in(g, a, b, n3 - n2, n2) &&
                    shifted_in(g, a, b, n1, n3 - n1);
  return rlab::make_rational(hits, M * M * N * N * N);
}

inline Rational recurrence(const Grid& g, std::int64_t n) {
  const auto M = static_cast<std::int64_t>(g.M);
  long hits = 0;
  for (std::int64_t a = 0; a < M; ++a)
    for (std::int64_t b = 0; b < M; ++b) hits += g.at(a, b) && g.at(a + n, b) && g.at(a, b + n);
  return rlab::make_rational(hits, M * M);
}

inline Rational tripartite_rhs(const Grid& g, std::int64_t N) {
  Rational sum = 0;
  for (std::int64_t n1 = 1; n1 <= N; ++n1)
    for (std::int64_t n2 = 1; n2 <= N; ++n2)
      for (std::int64_t n3 = 1; n3 <= N; ++n3) sum += recurrence(g, n3 - n2 - n1);
  return sum / (N * N * N);
}

inline Rational tripartite_bound(const Grid& g, std::int64_t N) {
  Rational sum = 0;
  for (std::int64_t n = -2 * N; n <= N; ++n) sum += recurrence(g, n);
  return sum / N;
}

inline Rational frac(long a, long b) { return rlab::make_rational(a, b); }

}  // namespace oracle
