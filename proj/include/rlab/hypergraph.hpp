#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rlab/bitset.hpp"
#include "rlab/rational.hpp"

namespace rlab {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;  // strictly ascending

// Finite d-uniform hypergraph on vertices 0..n-1. Immutable after build.
class Hypergraph {
 public:
  Hypergraph() = default;

  // Normalizes each edge (sorted) and deduplicates. Throws InputError on a
  // vertex out of range, an edge of the wrong arity, or a repeated vertex.
  static Hypergraph build(std::size_t n, unsigned d, std::vector<Edge> edges);

  std::size_t n() const noexcept { return n_; }
  unsigned d() const noexcept { return d_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // `vertices` must be strictly ascending.
  bool has_edge(std::span<const Vertex> vertices) const;
  // Any order; false when a vertex repeats.
  bool contains_set(std::span<const Vertex> vertices) const;
  bool adjacent(Vertex u, Vertex v) const { return adjacency_[u].test(v); }  // d == 2 only
  const Bitset& neighbors(Vertex v) const { return adjacency_[v]; }           // d == 2 only

  Hypergraph without(const std::vector<Edge>& removed) const;
  // perm[v] is the new label of v; must be a permutation of 0..n-1.
  Hypergraph relabeled(const std::vector<Vertex>& perm) const;

  bool operator==(const Hypergraph& other) const {
    return n_ == other.n_ && d_ == other.d_ && edges_ == other.edges_;
  }

 private:
  struct KeyHash {
    std::size_t operator()(unsigned __int128 k) const noexcept;
  };
  unsigned __int128 key(std::span<const Vertex> sorted) const noexcept;

  std::size_t n_ = 0;
  unsigned d_ = 0;
  unsigned key_bits_ = 0;
  std::vector<Edge> edges_;
  std::vector<Bitset> adjacency_;                              // d == 2
  std::unordered_set<unsigned __int128, KeyHash> edge_keys_;  // d != 2
};

// Motif G0 on labels 0..v0-1.
struct MotifSpec {
  unsigned d = 2;
  std::size_t v0 = 0;
  std::vector<Edge> edges;

  // Throws InputError on a bad edge, or on an empty edge set unless allow_trivial.
  static MotifSpec make(unsigned d, std::size_t v0, std::vector<Edge> edges, bool allow_trivial = false);
  static MotifSpec single_edge(unsigned d);
  static MotifSpec triangle();
  static MotifSpec clique(unsigned d, std::size_t v0);
  static MotifSpec path(std::size_t edges);
  static MotifSpec cycle(std::size_t length);
  // "edge", "edge-3", "triangle", "k4", "path2", "path3", "cycle4", "k4-3" (K_4 in the 3-uniform sense).
  static MotifSpec named(std::string_view name);
  bool is_triangle() const;
};

// |{(x_0..x_{v0-1}) in V^{v0} : {x_i : i in e} in E for every motif edge e}|.
// Tuples whose edge images repeat a vertex never match an edge.
BigInt count_labeled_copies(const Hypergraph& g, const MotifSpec& motif, unsigned threads = 1);

// Ordered triples (x1,x2,x3) with all three pairs adjacent; d == 2 only.
BigInt triangle_count(const Hypergraph& g, unsigned threads = 1);

// Each d-subset is included independently with probability p.
Hypergraph random_hypergraph(std::size_t n, unsigned d, double p, std::uint64_t seed);

// File format: first non-comment line `d n`, then one ascending edge per line;
// `#` starts a comment. Writing emits edges in lexicographic order.
Hypergraph read_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph& g);
Hypergraph load_hypergraph(const std::string& path);
void save_hypergraph(const std::string& path, const Hypergraph& g);
std::string hypergraph_to_string(const Hypergraph& g);

}  // namespace rlab
