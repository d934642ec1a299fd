#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "rlab/hypergraph.hpp"

namespace rlab {

struct FreenessCheck {
  bool free = false;
  BigInt count;
};
FreenessCheck verify_free(const Hypergraph& g, const MotifSpec& motif, unsigned threads = 1);

struct RemovalResult {
  std::string method;
  std::vector<Edge> deleted;
  Hypergraph graph;  // G'
  std::size_t phase3_deletions = 0;
  std::size_t phase4_deletions = 0;
  std::size_t clusters = 0;
  FreenessCheck verification;
  // 2^d * d! * |E0|, reported as metadata.
  BigInt budget_constant;

  nlohmann::json to_json(bool list_edges = true) const;
};

// Deletes the edge lying in the most remaining labeled copies (lexicographically
// smallest on ties) until no copy is left.
RemovalResult remove_copies_greedy(const Hypergraph& g, const MotifSpec& motif, unsigned threads = 1);

// Vertices grouped by adjacency to s polled vertices. A polled vertex's own
// poll positions are wildcards when matching it to a cluster, so a vertex is
// never split off merely for not being adjacent to itself.
struct PollClustering {
  std::vector<Vertex> polls;
  std::vector<std::size_t> cluster_of;            // per vertex
  std::vector<std::vector<Vertex>> members;       // per cluster, ascending
};
PollClustering poll_clusters(const Hypergraph& g, std::size_t poll_size, std::uint64_t seed);

// Per cluster pair (a <= b): edges and vertex pairs between them.
struct BlockDensity {
  std::size_t a = 0, b = 0;
  std::size_t edges = 0, pairs = 0;
};
std::vector<BlockDensity> block_densities(const Hypergraph& g, const PollClustering& c);

RemovalResult remove_triangles_partition(const Hypergraph& g, std::size_t poll_size, double tau, std::uint64_t seed,
                                         unsigned threads = 1);

struct PartitionDescription {
  PollClustering clustering;
  // complete[a][b], symmetric.
  std::vector<std::vector<bool>> complete;
  std::vector<std::pair<std::size_t, std::size_t>> demoted;  // in demotion order
};
struct StrongRemovalReport {
  PartitionDescription partition;
  Hypergraph blowup;
  bool blowup_triangle_free = false;
  std::size_t symmetric_difference = 0;  // |E(G) xor E(G')|
  std::size_t initial_complete_blocks = 0;

  nlohmann::json to_json() const;
};
StrongRemovalReport strong_removal_partition(const Hypergraph& g, std::size_t poll_size, double tau,
                                             std::uint64_t seed, unsigned threads = 1);

}  // namespace rlab
