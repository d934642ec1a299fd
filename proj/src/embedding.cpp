#include "rlab/embedding.hpp"

#include <cmath>

#include "rlab/errors.hpp"
#include "rlab/parallel.hpp"
#include "rlab/rng.hpp"

namespace rlab {

ZnSet ZnSet::make(std::size_t N, const std::vector<std::int64_t>& elements) {
  if (N < 1) throw InputError("modulus must be at least 1");
  ZnSet s{N, Bitset(N)};
  for (auto x : elements) {
    if (x < 0 || static_cast<std::size_t>(x) >= N) throw InputError("element " + std::to_string(x) + " outside Z_N");
    s.members.set(static_cast<std::size_t>(x));
  }
  return s;
}

ZnSet ZnSet::full(std::size_t N) {
  if (N < 1) throw InputError("modulus must be at least 1");
  return ZnSet{N, Bitset(N, true)};
}

bool ZnSet::contains(std::int64_t x) const {
  const auto n = static_cast<std::int64_t>(N);
  x %= n;
  if (x < 0) x += n;
  return members.test(static_cast<std::size_t>(x));
}

namespace {

// Leaf images for one assignment, folded into a mask for the truth table.
class LeafEvaluator {
 public:
  LeafEvaluator(const Hypergraph& g, const RegularEvent& e) : g_(g), e_(e), table_(e.truth_table()) {
    if (e.has_shift_leaves()) throw InputError("shift leaves A[n] need a Furstenberg instance, not a graph");
    if (!e.has_edge_leaves()) throw InputError("event has no edge leaves");
    if (e.leaf_uniformity() != g.d())
      throw InputError("event leaves have arity " + std::to_string(e.leaf_uniformity()) + " but the graph is " +
                       std::to_string(g.d()) + "-uniform");
  }

  bool holds(const std::vector<Vertex>& x) const {
    std::size_t mask = 0;
    Vertex image[16];
    const auto& leaves = e_.leaves();
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      const auto& idx = leaves[i].indices;
      for (std::size_t j = 0; j < idx.size(); ++j) image[j] = x[idx[j] - 1];
      if (g_.contains_set(std::span<const Vertex>(image, idx.size()))) mask |= std::size_t{1} << i;
    }
    return table_[mask] != 0;
  }

 private:
  const Hypergraph& g_;
  const RegularEvent& e_;
  std::vector<std::uint8_t> table_;
};

BigInt power(std::size_t base, std::size_t exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

}  // namespace

BigInt embed_count_exact(const Hypergraph& g, const RegularEvent& e, const EmbedOptions& opt) {
  const LeafEvaluator eval(g, e);
  const std::size_t K = e.arity();
  if (K > opt.max_arity)
    throw InputError("event arity " + std::to_string(K) + " exceeds the exact-enumeration cap " +
                     std::to_string(opt.max_arity) + "; use Monte Carlo");
  const std::size_t n = g.n();
  std::vector<std::uint64_t> partial(n, 0);
  parallel_for_blocks(n, opt.threads, [&](std::size_t first) {
    std::vector<Vertex> x(K, 0);
    x[0] = static_cast<Vertex>(first);
    std::uint64_t hits = 0;
    while (true) {
      if (eval.holds(x)) ++hits;
      std::size_t i = K;
      while (i > 1 && x[i - 1] + 1 == n) x[--i] = 0;
      if (i <= 1) break;
      ++x[i - 1];
    }
    partial[first] = hits;
  });
  BigInt total = 0;
  for (auto p : partial) total += BigInt(static_cast<unsigned long>(p));
  return total;
}

Rational embed_prob_exact(const Hypergraph& g, const RegularEvent& e, const EmbedOptions& opt) {
  const BigInt hits = embed_count_exact(g, e, opt);
  return make_rational(hits, power(g.n(), e.arity()));
}

McEstimate embed_prob_mc(const Hypergraph& g, const RegularEvent& e, std::uint64_t samples, std::uint64_t seed,
                         unsigned threads) {
  if (samples < 1) throw InputError("need at least one sample");
  const LeafEvaluator eval(g, e);
  const std::size_t K = e.arity();
  constexpr std::uint64_t block = 4096;
  const std::size_t blocks = static_cast<std::size_t>((samples + block - 1) / block);
  std::vector<std::uint64_t> partial(blocks, 0);
  parallel_for_blocks(blocks, threads, [&](std::size_t b) {
    std::vector<Vertex> x(K);
    const std::uint64_t lo = b * block;
    const std::uint64_t hi = std::min<std::uint64_t>(samples, lo + block);
    std::uint64_t hits = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      CounterStream rng(seed, stream_tag::embed_mc, i);
      for (auto& v : x) v = static_cast<Vertex>(rng.below(g.n()));
      if (eval.holds(x)) ++hits;
    }
    partial[b] = hits;
  });
  McEstimate out;
  out.samples = samples;
  for (auto p : partial) out.hits += p;
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.standard_error = std::sqrt(out.estimate * (1 - out.estimate) / static_cast<double>(samples));
  return out;
}

FurstenbergInstance FurstenbergInstance::make(ZnSet A, std::size_t m) {
  if (m < 1) throw InputError("scale m must be at least 1");
  if (m > A.N) throw InputError("scale m exceeds the modulus N");
  return FurstenbergInstance{std::move(A), m};
}

Rational furstenberg_prob(const FurstenbergInstance& inst, const RegularEvent& e) {
  if (inst.m < 1 || inst.m > inst.N()) throw InputError("scale m must satisfy 1 <= m <= N");
  if (e.has_edge_leaves()) throw InputError("edge leaves A(i,j) need a graph, not a Furstenberg instance");
  const auto table = e.truth_table();
  const auto& leaves = e.leaves();
  const auto N = static_cast<std::int64_t>(inst.N());
  const auto L = static_cast<std::int64_t>(inst.L());
  std::vector<std::int64_t> step(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    step[i] = leaves[i].offset % N;
    if (step[i] < 0) step[i] += N;
  }
  std::uint64_t hits = 0;
  for (std::int64_t x = 0; x < N; ++x) {
    for (std::int64_t lambda = 1; lambda <= L; ++lambda) {
      std::size_t mask = 0;
      for (std::size_t i = 0; i < leaves.size(); ++i)
        if (inst.A.members.test(static_cast<std::size_t>((x + step[i] * lambda) % N))) mask |= std::size_t{1} << i;
      hits += table[mask];
    }
  }
  return make_rational(BigInt(static_cast<unsigned long>(hits)), BigInt(N) * BigInt(L));
}

RegularEvent ap_event(std::size_t k, std::int64_t n) {
  if (k < 1) throw InputError("progression length must be at least 1");
  RegularEvent e = RegularEvent::shift_leaf(0);
  for (std::size_t j = 1; j < k; ++j) e = e & RegularEvent::shift_leaf(static_cast<std::int64_t>(j) * n);
  return e;
}

}  // namespace rlab
