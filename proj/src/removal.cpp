#include "rlab/removal.hpp"

#include <algorithm>
#include <map>

#include "rlab/errors.hpp"
#include "rlab/parallel.hpp"
#include "rlab/rng.hpp"

namespace rlab {

namespace {

std::size_t edge_index(const std::vector<Edge>& edges, const Edge& e) {
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  return static_cast<std::size_t>(it - edges.begin());
}

BigInt budget_constant(unsigned d, std::size_t motif_edges) {
  BigInt c = motif_edges;
  for (unsigned i = 1; i <= d; ++i) c *= 2 * i;  // 2^d * d!
  return c;
}

// Greedy on d == 2 triangles: copies through uv are 6 * |N(u) & N(v)|, so the
// codegree alone ranks edges.
std::vector<Edge> greedy_triangles(const Hypergraph& g) {
  const auto& edges = g.edges();
  std::vector<Bitset> adj;
  for (Vertex v = 0; v < g.n(); ++v) adj.push_back(g.neighbors(v));
  std::vector<std::size_t> codeg(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) codeg[i] = adj[edges[i][0]].and_count(adj[edges[i][1]]);
  std::vector<bool> alive(edges.size(), true);
  std::vector<Edge> deleted;
  for (;;) {
    std::size_t best = edges.size(), best_c = 0;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (alive[i] && codeg[i] > best_c) {
        best_c = codeg[i];
        best = i;
      }
    if (best == edges.size()) break;
    const Vertex u = edges[best][0], v = edges[best][1];
    (adj[u] & adj[v]).for_each([&](std::size_t w) {
      const Vertex x = static_cast<Vertex>(w);
      --codeg[edge_index(edges, {std::min(u, x), std::max(u, x)})];
      --codeg[edge_index(edges, {std::min(v, x), std::max(v, x)})];
    });
    adj[u].reset(v);
    adj[v].reset(u);
    alive[best] = false;
    deleted.push_back(edges[best]);
  }
  return deleted;
}

// Distinct edge sets hit by labeled copies, with their multiplicities.
struct CopySet {
  std::vector<std::uint32_t> edges;
  std::uint64_t multiplicity = 0;
};

std::vector<CopySet> enumerate_copies(const Hypergraph& g, const MotifSpec& motif, unsigned threads) {
  // Only labels touched by an edge matter for the argmax; isolated labels scale
  // every count by the same factor.
  std::vector<int> pos(motif.v0, -1);
  std::vector<std::size_t> labels;
  for (const auto& e : motif.edges)
    for (Vertex x : e)
      if (pos[x] < 0) {
        pos[x] = 0;
        labels.push_back(x);
      }
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i) pos[labels[i]] = static_cast<int>(i);
  const std::size_t k = labels.size();
  std::vector<std::vector<std::vector<std::size_t>>> closing(k);
  std::vector<std::vector<std::size_t>> medges;
  for (const auto& e : motif.edges) {
    std::vector<std::size_t> r;
    for (Vertex x : e) r.push_back(static_cast<std::size_t>(pos[x]));
    closing[*std::max_element(r.begin(), r.end())].push_back(r);
    medges.push_back(r);
  }

  const auto& gedges = g.edges();
  std::vector<std::vector<std::vector<std::uint32_t>>> per_block(g.n());
  parallel_for_blocks(g.n(), threads, [&](std::size_t first) {
    std::vector<Vertex> assign(k);
    std::vector<Vertex> image;
    auto holds = [&](std::size_t level) {
      for (const auto& e : closing[level]) {
        image.clear();
        for (std::size_t x : e) image.push_back(assign[x]);
        if (!g.contains_set(image)) return false;
      }
      return true;
    };
    auto& out = per_block[first];
    auto rec = [&](auto&& self, std::size_t level) -> void {
      if (level == k) {
        std::vector<std::uint32_t> ids;
        for (const auto& e : medges) {
          Edge img;
          for (std::size_t x : e) img.push_back(assign[x]);
          std::sort(img.begin(), img.end());
          ids.push_back(static_cast<std::uint32_t>(edge_index(gedges, img)));
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        out.push_back(std::move(ids));
        return;
      }
      for (Vertex v = 0; v < g.n(); ++v) {
        assign[level] = v;
        if (holds(level)) self(self, level + 1);
      }
    };
    assign[0] = static_cast<Vertex>(first);
    if (holds(0)) rec(rec, 1);
  });
  std::vector<std::vector<std::uint32_t>> all;
  for (auto& b : per_block)
    for (auto& c : b) all.push_back(std::move(c));
  std::sort(all.begin(), all.end());
  std::vector<CopySet> sets;
  for (auto& c : all) {
    if (sets.empty() || sets.back().edges != c) sets.push_back({std::move(c), 0});
    ++sets.back().multiplicity;
  }
  return sets;
}

std::vector<Edge> greedy_generic(const Hypergraph& g, const MotifSpec& motif, unsigned threads) {
  const auto sets = enumerate_copies(g, motif, threads);
  const auto& edges = g.edges();
  std::vector<std::uint64_t> count(edges.size(), 0);
  std::vector<std::vector<std::size_t>> through(edges.size());
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (auto e : sets[s].edges) {
      count[e] += sets[s].multiplicity;
      through[e].push_back(s);
    }
  std::vector<bool> set_alive(sets.size(), true);
  std::vector<Edge> deleted;
  for (;;) {
    std::size_t best = edges.size();
    std::uint64_t best_c = 0;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (count[i] > best_c) {
        best_c = count[i];
        best = i;
      }
    if (best == edges.size()) break;
    for (std::size_t s : through[best]) {
      if (!set_alive[s]) continue;
      set_alive[s] = false;
      for (auto e : sets[s].edges) count[e] -= sets[s].multiplicity;
    }
    deleted.push_back(edges[best]);
  }
  return deleted;
}

nlohmann::json edges_json(const std::vector<Edge>& edges) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : edges) out.push_back(e);
  return out;
}

}  // namespace

FreenessCheck verify_free(const Hypergraph& g, const MotifSpec& motif, unsigned threads) {
  if (g.d() != motif.d) throw InputError("motif uniformity does not match the hypergraph");
  FreenessCheck c;
  if (motif.edges.empty()) {
    c.free = true;
    c.count = 0;
    return c;
  }
  c.count = motif.is_triangle() && g.d() == 2 ? triangle_count(g, threads) : count_labeled_copies(g, motif, threads);
  c.free = c.count == 0;
  return c;
}

nlohmann::json RemovalResult::to_json(bool list_edges) const {
  nlohmann::json j{{"method", method},
                   {"deletions", deleted.size()},
                   {"phase3_deletions", phase3_deletions},
                   {"phase4_deletions", phase4_deletions},
                   {"remaining_edges", graph.edge_count()},
                   {"residual_copies", bigint_to_json(verification.count)},
                   {"verified_free", verification.free},
                   {"budget_constant", bigint_to_json(budget_constant)}};
  if (clusters > 0) j["clusters"] = clusters;
  if (list_edges) j["deleted"] = edges_json(deleted);
  return j;
}

RemovalResult remove_copies_greedy(const Hypergraph& g, const MotifSpec& motif, unsigned threads) {
  if (g.d() != motif.d) throw InputError("motif uniformity does not match the hypergraph");
  RemovalResult r;
  r.method = "greedy";
  r.budget_constant = budget_constant(motif.d, motif.edges.size());
  if (!motif.edges.empty())
    r.deleted = g.d() == 2 && motif.is_triangle() ? greedy_triangles(g) : greedy_generic(g, motif, threads);
  r.phase4_deletions = r.deleted.size();
  r.graph = g.without(r.deleted);
  r.verification = verify_free(r.graph, motif, threads);
  if (!r.verification.free) throw VerificationError("greedy removal left copies behind");
  return r;
}

PollClustering poll_clusters(const Hypergraph& g, std::size_t poll_size, std::uint64_t seed) {
  if (g.d() != 2) throw InputError("polling partitions need a graph (d = 2)");
  const std::size_t n = g.n();
  PollClustering c;
  for (std::size_t j = 0; j < poll_size; ++j)
    c.polls.push_back(static_cast<Vertex>(CounterStream(seed, stream_tag::polls, j).below(n)));
  std::vector<std::vector<bool>> sig(n, std::vector<bool>(poll_size));
  std::vector<bool> polled(n, false);
  for (std::size_t j = 0; j < poll_size; ++j) polled[c.polls[j]] = true;
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t j = 0; j < poll_size; ++j) sig[v][j] = g.adjacent(v, c.polls[j]);

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> raw(n, none);
  std::vector<Vertex> rep;  // representative vertex per raw cluster
  std::map<std::vector<bool>, std::size_t> exact;
  for (Vertex v = 0; v < n; ++v) {
    if (polled[v]) continue;
    auto [it, fresh] = exact.try_emplace(sig[v], rep.size());
    if (fresh) rep.push_back(v);
    raw[v] = it->second;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!polled[v]) continue;
    for (std::size_t k = 0; k < rep.size() && raw[v] == none; ++k) {
      bool match = true;
      for (std::size_t j = 0; j < poll_size && match; ++j)
        if (c.polls[j] != v && sig[v][j] != sig[rep[k]][j]) match = false;
      if (match) raw[v] = k;
    }
    if (raw[v] == none) {
      raw[v] = rep.size();
      rep.push_back(v);
    }
  }
  // Renumber by smallest member.
  std::vector<std::size_t> renum(rep.size(), none);
  c.cluster_of.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (renum[raw[v]] == none) {
      renum[raw[v]] = c.members.size();
      c.members.emplace_back();
    }
    c.cluster_of[v] = renum[raw[v]];
    c.members[c.cluster_of[v]].push_back(v);
  }
  return c;
}

std::vector<BlockDensity> block_densities(const Hypergraph& g, const PollClustering& c) {
  const std::size_t m = c.members.size();
  std::vector<BlockDensity> out;
  std::vector<std::vector<std::size_t>> at(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      BlockDensity bd;
      bd.a = a;
      bd.b = b;
      const std::size_t sa = c.members[a].size(), sb = c.members[b].size();
      bd.pairs = a == b ? sa * (sa - 1) / 2 : sa * sb;
      at[a][b] = out.size();
      out.push_back(bd);
    }
  for (const auto& e : g.edges()) {
    std::size_t a = c.cluster_of[e[0]], b = c.cluster_of[e[1]];
    if (a > b) std::swap(a, b);
    ++out[at[a][b]].edges;
  }
  return out;
}

RemovalResult remove_triangles_partition(const Hypergraph& g, std::size_t poll_size, double tau, std::uint64_t seed,
                                         unsigned threads) {
  if (g.d() != 2) throw InputError("partition removal needs a graph (d = 2)");
  if (!(tau > 0.0 && tau < 1.0)) throw InputError("density threshold must lie in (0, 1)");
  const auto c = poll_clusters(g, poll_size, seed);
  const auto dens = block_densities(g, c);
  const std::size_t m = c.members.size();
  std::vector<std::vector<bool>> sparse(m, std::vector<bool>(m, false));
  for (const auto& bd : dens)
    if (bd.pairs > 0 && static_cast<double>(bd.edges) < tau * static_cast<double>(bd.pairs))
      sparse[bd.a][bd.b] = sparse[bd.b][bd.a] = true;

  RemovalResult r;
  r.method = "partition";
  r.clusters = m;
  r.budget_constant = budget_constant(2, 3);
  for (const auto& e : g.edges())
    if (sparse[c.cluster_of[e[0]]][c.cluster_of[e[1]]]) r.deleted.push_back(e);
  r.phase3_deletions = r.deleted.size();
  const Hypergraph mid = g.without(r.deleted);
  const auto rest = greedy_triangles(mid);
  r.phase4_deletions = rest.size();
  r.deleted.insert(r.deleted.end(), rest.begin(), rest.end());
  r.graph = mid.without(rest);
  r.verification = verify_free(r.graph, MotifSpec::triangle(), threads);
  if (!r.verification.free) throw VerificationError("partition removal left triangles behind");
  return r;
}

StrongRemovalReport strong_removal_partition(const Hypergraph& g, std::size_t poll_size, double tau,
                                             std::uint64_t seed, unsigned threads) {
  if (g.d() != 2) throw InputError("strong removal needs a graph (d = 2)");
  if (!(tau > 0.0 && tau < 1.0)) throw InputError("density threshold must lie in (0, 1)");
  StrongRemovalReport rep;
  auto& part = rep.partition;
  part.clustering = poll_clusters(g, poll_size, seed);
  const auto& c = part.clustering;
  const std::size_t m = c.members.size();
  part.complete.assign(m, std::vector<bool>(m, false));
  std::vector<std::vector<std::size_t>> pairs(m, std::vector<std::size_t>(m, 0));
  for (const auto& bd : block_densities(g, c)) {
    pairs[bd.a][bd.b] = pairs[bd.b][bd.a] = bd.pairs;
    if (bd.pairs > 0 && static_cast<double>(bd.edges) >= tau * static_cast<double>(bd.pairs)) {
      part.complete[bd.a][bd.b] = part.complete[bd.b][bd.a] = true;
      ++rep.initial_complete_blocks;
    }
  }

  // Blow-up triangles through block pair (a, b): edges there times common
  // completions, counting only vertices other than the two endpoints.
  for (;;) {
    BigInt best_t = 0;
    std::size_t ba = 0, bb = 0;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) {
        if (!part.complete[a][b]) continue;
        BigInt through = 0;
        for (std::size_t x = 0; x < m; ++x) {
          if (!part.complete[a][x] || !part.complete[b][x]) continue;
          const long extra = static_cast<long>(c.members[x].size()) - (x == a) - (x == b);
          if (extra > 0) through += extra;
        }
        const BigInt t = through * BigInt(static_cast<unsigned long>(pairs[a][b]));
        if (t > best_t) {
          best_t = t;
          ba = a;
          bb = b;
        }
      }
    if (best_t == 0) break;
    part.complete[ba][bb] = part.complete[bb][ba] = false;
    part.demoted.emplace_back(ba, bb);
  }

  std::vector<Edge> edges;
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = u + 1; v < g.n(); ++v)
      if (part.complete[c.cluster_of[u]][c.cluster_of[v]]) edges.push_back({u, v});
  rep.blowup = Hypergraph::build(g.n(), 2, std::move(edges));
  rep.blowup_triangle_free = triangle_count(rep.blowup, threads) == 0;
  if (!rep.blowup_triangle_free) throw VerificationError("blow-up graph still has triangles");
  std::vector<Edge> diff;
  std::set_symmetric_difference(g.edges().begin(), g.edges().end(), rep.blowup.edges().begin(),
                                rep.blowup.edges().end(), std::back_inserter(diff));
  rep.symmetric_difference = diff.size();
  return rep;
}

nlohmann::json StrongRemovalReport::to_json() const {
  const auto& c = partition.clustering;
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& mem : c.members) clusters.push_back(mem);
  nlohmann::json complete = nlohmann::json::array();
  for (std::size_t a = 0; a < partition.complete.size(); ++a)
    for (std::size_t b = a; b < partition.complete.size(); ++b)
      if (partition.complete[a][b]) complete.push_back({a, b});
  nlohmann::json demoted = nlohmann::json::array();
  for (auto [a, b] : partition.demoted) demoted.push_back({a, b});
  return {{"method", "strong-partition"},
          {"polls", c.polls},
          {"clusters", clusters},
          {"complete_blocks", complete},
          {"initial_complete_blocks", initial_complete_blocks},
          {"demoted", demoted},
          {"blowup_edges", blowup.edge_count()},
          {"blowup_triangle_free", blowup_triangle_free},
          {"symmetric_difference", symmetric_difference}};
}

}  // namespace rlab
