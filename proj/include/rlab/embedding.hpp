#pragma once

#include <cstdint>

#include "rlab/event.hpp"
#include "rlab/hypergraph.hpp"
#include "rlab/rational.hpp"
#include "rlab/zn_set.hpp"

namespace rlab {

struct EmbedOptions {
  std::uint32_t max_arity = 6;  // exact enumeration visits n^K assignments
  unsigned threads = 1;
};

// Number of assignments (x_1..x_K) in V^K satisfying E, K = E.arity(); leaf
// A_e holds iff the images of e are pairwise distinct and form an edge.
BigInt embed_count_exact(const Hypergraph& g, const RegularEvent& e, const EmbedOptions& opt = {});
// embed_count_exact / n^K.
Rational embed_prob_exact(const Hypergraph& g, const RegularEvent& e, const EmbedOptions& opt = {});

struct McEstimate {
  double estimate = 0;
  double standard_error = 0;  // plug-in sqrt(p(1-p)/samples)
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

// Sample i draws its K vertices from the counter stream (seed, i) only, so the
// result is the same for every thread count.
McEstimate embed_prob_mc(const Hypergraph& g, const RegularEvent& e, std::uint64_t samples, std::uint64_t seed,
                         unsigned threads = 1);

struct FurstenbergInstance {
  ZnSet A;
  std::size_t m = 1;
  // Throws InputError unless 1 <= m <= N.
  static FurstenbergInstance make(ZnSet A, std::size_t m);
  std::size_t N() const { return A.N; }
  std::size_t L() const { return A.N / m; }
};

// |{(x, lambda) in Z_N x [L] : E holds with A[n] |-> x + n*lambda in A}| / (N L).
Rational furstenberg_prob(const FurstenbergInstance& inst, const RegularEvent& e);

// A[0] & A[n] & ... & A[(k-1)n].
RegularEvent ap_event(std::size_t k, std::int64_t n = 1);

}  // namespace rlab
