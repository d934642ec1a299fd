#include "rlab/hypergraph.hpp"

#include <algorithm>
#include <bit>

#include "rlab/errors.hpp"
#include "rlab/parallel.hpp"
#include "rlab/rng.hpp"

namespace rlab {

namespace {

void normalize_edge(Edge& e, std::size_t n, unsigned d) {
  if (e.size() != d)
    throw InputError("edge has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(d));
  std::sort(e.begin(), e.end());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] >= n) throw InputError("vertex " + std::to_string(e[i]) + " out of range");
    if (i > 0 && e[i] == e[i - 1]) throw InputError("repeated vertex " + std::to_string(e[i]) + " within an edge");
  }
}

BigInt from_u128(unsigned __int128 v) {
  BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  return (hi << 64) + lo;
}

}  // namespace

std::size_t Hypergraph::KeyHash::operator()(unsigned __int128 k) const noexcept {
  return static_cast<std::size_t>(mix64(static_cast<std::uint64_t>(k) ^ mix64(static_cast<std::uint64_t>(k >> 64))));
}

unsigned __int128 Hypergraph::key(std::span<const Vertex> sorted) const noexcept {
  unsigned __int128 k = 0;
  for (Vertex v : sorted) k = (k << key_bits_) | v;
  return k;
}

Hypergraph Hypergraph::build(std::size_t n, unsigned d, std::vector<Edge> edges) {
  if (n < 1) throw InputError("vertex count must be at least 1");
  if (d < 1) throw InputError("uniformity must be at least 1");
  if (!edges.empty() && d > n) throw InputError("uniformity exceeds vertex count");
  if (n > (std::size_t{1} << 31)) throw InputError("vertex count too large");
  for (auto& e : edges) normalize_edge(e, n, d);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Hypergraph g;
  g.n_ = n;
  g.d_ = d;
  g.key_bits_ = std::max(1u, static_cast<unsigned>(std::bit_width(n - 1)));
  g.edges_ = std::move(edges);
  if (d == 2) {
    g.adjacency_.assign(n, Bitset(n));
    for (const auto& e : g.edges_) {
      g.adjacency_[e[0]].set(e[1]);
      g.adjacency_[e[1]].set(e[0]);
    }
  } else {
    if (static_cast<std::size_t>(g.key_bits_) * d > 128)
      throw InputError("hypergraph too large for packed edge keys");
    g.edge_keys_.reserve(g.edges_.size() * 2);
    for (const auto& e : g.edges_) g.edge_keys_.insert(g.key(e));
  }
  return g;
}

bool Hypergraph::has_edge(std::span<const Vertex> vertices) const {
  if (vertices.size() != d_) return false;
  if (d_ == 2) return adjacency_[vertices[0]].test(vertices[1]);
  return edge_keys_.count(key(vertices)) != 0;
}

bool Hypergraph::contains_set(std::span<const Vertex> vertices) const {
  if (vertices.size() != d_) return false;
  if (d_ == 2) return vertices[0] != vertices[1] && adjacency_[vertices[0]].test(vertices[1]);
  Vertex buf[16];
  std::vector<Vertex> heap;
  Vertex* sorted = buf;
  if (d_ > 16) {
    heap.resize(d_);
    sorted = heap.data();
  }
  std::copy(vertices.begin(), vertices.end(), sorted);
  std::sort(sorted, sorted + d_);
  for (unsigned i = 1; i < d_; ++i)
    if (sorted[i] == sorted[i - 1]) return false;
  return edge_keys_.count(key(std::span<const Vertex>(sorted, d_))) != 0;
}

Hypergraph Hypergraph::without(const std::vector<Edge>& removed) const {
  std::vector<Edge> sorted_removed = removed;
  for (auto& e : sorted_removed) std::sort(e.begin(), e.end());
  std::sort(sorted_removed.begin(), sorted_removed.end());
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  std::set_difference(edges_.begin(), edges_.end(), sorted_removed.begin(), sorted_removed.end(),
                      std::back_inserter(kept));
  return build(n_, d_, std::move(kept));
}

Hypergraph Hypergraph::relabeled(const std::vector<Vertex>& perm) const {
  if (perm.size() != n_) throw InputError("permutation size mismatch");
  std::vector<bool> seen(n_, false);
  for (Vertex v : perm) {
    if (v >= n_ || seen[v]) throw InputError("not a permutation");
    seen[v] = true;
  }
  std::vector<Edge> out = edges_;
  for (auto& e : out)
    for (auto& v : e) v = perm[v];
  return build(n_, d_, std::move(out));
}

MotifSpec MotifSpec::make(unsigned d, std::size_t v0, std::vector<Edge> edges, bool allow_trivial) {
  if (d < 1) throw InputError("motif uniformity must be at least 1");
  if (edges.empty() && !allow_trivial) throw InputError("motif has no edges");
  for (auto& e : edges) normalize_edge(e, v0, d);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return MotifSpec{d, v0, std::move(edges)};
}

MotifSpec MotifSpec::single_edge(unsigned d) {
  Edge e(d);
  for (unsigned i = 0; i < d; ++i) e[i] = i;
  return make(d, d, {e});
}

MotifSpec MotifSpec::triangle() { return make(2, 3, {{0, 1}, {1, 2}, {0, 2}}); }

MotifSpec MotifSpec::clique(unsigned d, std::size_t v0) {
  if (v0 < d) throw InputError("clique smaller than uniformity");
  std::vector<Edge> edges;
  Edge e(d);
  for (unsigned i = 0; i < d; ++i) e[i] = i;
  while (true) {
    edges.push_back(e);
    int i = static_cast<int>(d) - 1;
    while (i >= 0 && e[i] == v0 - d + i) --i;
    if (i < 0) break;
    ++e[i];
    for (unsigned j = i + 1; j < d; ++j) e[j] = e[j - 1] + 1;
  }
  return make(d, v0, std::move(edges));
}

MotifSpec MotifSpec::path(std::size_t edge_count) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edge_count; ++i) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  return make(2, edge_count + 1, std::move(edges));
}

MotifSpec MotifSpec::cycle(std::size_t length) {
  if (length < 3) throw InputError("cycle length must be at least 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < length; ++i)
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % length)});
  return make(2, length, std::move(edges));
}

MotifSpec MotifSpec::named(std::string_view name) {
  if (name == "edge") return single_edge(2);
  if (name == "triangle") return triangle();
  if (name == "k4") return clique(2, 4);
  if (name == "path2") return path(2);
  if (name == "path3") return path(3);
  if (name == "cycle4") return cycle(4);
  if (name == "k4-3") return clique(3, 4);
  if (name == "edge-3") return single_edge(3);
  throw InputError("unknown motif '" + std::string(name) + "'");
}

bool MotifSpec::is_triangle() const {
  return d == 2 && v0 == 3 && edges == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}};
}

namespace {

// Backtracking over motif labels in order; edges are checked as soon as their
// largest label is assigned.
class CopyCounter {
 public:
  CopyCounter(const Hypergraph& g, const MotifSpec& m) : g_(g), m_(m), closing_(m.v0), back_(m.v0) {
    for (const auto& e : m.edges) {
      closing_[e.back()].push_back(e);
      if (m.d == 2) back_[e[1]].push_back(e[0]);
    }
  }

  unsigned __int128 count_from(Vertex first) const {
    std::vector<Vertex> assign(m_.v0);
    assign[0] = first;
    if (!closing_[0].empty() && !edges_hold(0, assign)) return 0;
    if (m_.v0 == 1) return 1;
    if (m_.d == 2) {
      std::vector<Bitset> scratch(m_.v0, Bitset(g_.n()));
      return rec_graph(1, assign, scratch);
    }
    return rec_generic(1, assign);
  }

 private:
  bool edges_hold(std::size_t level, const std::vector<Vertex>& assign) const {
    Vertex image[16];
    for (const auto& e : closing_[level]) {
      if (e.size() > 16) throw InputError("motif edge too large");
      for (std::size_t i = 0; i < e.size(); ++i) image[i] = assign[e[i]];
      if (!g_.contains_set(std::span<const Vertex>(image, e.size()))) return false;
    }
    return true;
  }

  unsigned __int128 rec_graph(std::size_t level, std::vector<Vertex>& assign, std::vector<Bitset>& scratch) const {
    Bitset& cand = scratch[level];
    if (back_[level].empty()) {
      cand.fill(true);
    } else {
      cand = g_.neighbors(assign[back_[level][0]]);
      for (std::size_t i = 1; i < back_[level].size(); ++i) cand &= g_.neighbors(assign[back_[level][i]]);
    }
    if (level + 1 == m_.v0) return cand.count();
    unsigned __int128 total = 0;
    cand.for_each([&](std::size_t v) {
      assign[level] = static_cast<Vertex>(v);
      total += rec_graph(level + 1, assign, scratch);
    });
    return total;
  }

  unsigned __int128 rec_generic(std::size_t level, std::vector<Vertex>& assign) const {
    unsigned __int128 total = 0;
    const bool last = level + 1 == m_.v0;
    for (Vertex v = 0; v < g_.n(); ++v) {
      assign[level] = v;
      if (!edges_hold(level, assign)) continue;
      total += last ? 1 : rec_generic(level + 1, assign);
    }
    return total;
  }

  const Hypergraph& g_;
  const MotifSpec& m_;
  std::vector<std::vector<Edge>> closing_;
  std::vector<std::vector<Vertex>> back_;
};

}  // namespace

BigInt count_labeled_copies(const Hypergraph& g, const MotifSpec& motif, unsigned threads) {
  if (g.d() != motif.d) throw InputError("uniformity mismatch between graph and motif");
  if (motif.v0 == 0) return 1;
  CopyCounter counter(g, motif);
  std::vector<unsigned __int128> partial(g.n(), 0);
  parallel_for_blocks(g.n(), threads, [&](std::size_t b) { partial[b] = counter.count_from(static_cast<Vertex>(b)); });
  BigInt total = 0;
  for (auto p : partial) total += from_u128(p);
  return total;
}

BigInt triangle_count(const Hypergraph& g, unsigned threads) {
  if (g.d() != 2) throw InputError("triangle_count requires d = 2");
  std::vector<std::uint64_t> partial(g.n(), 0);
  parallel_for_blocks(g.n(), threads, [&](std::size_t u) {
    const Bitset& nu = g.neighbors(static_cast<Vertex>(u));
    std::uint64_t s = 0;
    nu.for_each([&](std::size_t v) { s += nu.and_count(g.neighbors(static_cast<Vertex>(v))); });
    partial[u] = s;
  });
  BigInt total = 0;
  for (auto p : partial) total += BigInt(static_cast<unsigned long>(p));
  return total;
}

Hypergraph random_hypergraph(std::size_t n, unsigned d, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  if (d < 1 || d > n) throw InputError("need 1 <= d <= n");
  std::vector<Edge> edges;
  Edge e(d);
  for (unsigned i = 0; i < d; ++i) e[i] = i;
  std::uint64_t index = 0;
  while (true) {
    CounterStream rng(seed, stream_tag::random_hypergraph, index++);
    if (rng.uniform() < p) edges.push_back(e);
    int i = static_cast<int>(d) - 1;
    while (i >= 0 && e[i] == n - d + i) --i;
    if (i < 0) break;
    ++e[i];
    for (unsigned j = i + 1; j < d; ++j) e[j] = e[j - 1] + 1;
  }
  return Hypergraph::build(n, d, std::move(edges));
}

}  // namespace rlab
