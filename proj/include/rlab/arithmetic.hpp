#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rlab/hypergraph.hpp"
#include "rlab/rational.hpp"
#include "rlab/zn_set.hpp"

namespace rlab {

// Subset of Z_M x Z_M; rows[a] holds the b with (a, b) in the set.
struct GridSet {
  std::size_t M = 0;
  std::vector<Bitset> rows;

  static GridSet make(std::size_t M, const std::vector<std::pair<std::int64_t, std::int64_t>>& points);
  static GridSet full(std::size_t M);
  bool contains(std::int64_t a, std::int64_t b) const;  // reduced mod M
  std::size_t size() const;
  // Point (a, b) at index a*M + b.
  Bitset flat() const;
};

// Pairs (x, r) in Z_N^2 with x, x+r, ..., x+(k-1)r all in A. r = 0 is counted
// unless exclude_degenerate.
BigInt count_aps(const ZnSet& a, std::size_t k, bool exclude_degenerate = false);

// Triples (x, y, r) in Z_M^3 with (x,y), (x+r,y), (x,y+r) all in A.
BigInt count_corners(const GridSet& a, bool exclude_degenerate = false);

// Z_M x Z_M with T(a,b) = (a+1,b), S(a,b) = (a,b+1), uniform measure.
// Throughout, T^n A denotes {x : T^n x in A}.
struct ShiftSystem {
  GridSet a;

  // |{x : T^p S^q x in A}| as a point set.
  Bitset shifted(std::int64_t p, std::int64_t q) const;
  std::size_t points() const { return a.M * a.M; }
};

// Average over x and n1, n2, n3 in [1, N] of the conjunction
//   T^{n1} S^{n2} x in A,  T^{n3-n2} S^{n2} x in A,  T^{n1} S^{n3-n1} x in A.
// Denominator M^2 N^3.
Rational tripartite_embed_prob(const ShiftSystem& sys, std::size_t N);

// P(A & T^n A & S^n A).
Rational recurrence_probability(const ShiftSystem& sys, std::int64_t n);
// (1/(2N+1)) sum_{n=-N}^{N} P(A & T^n A & S^n A).
Rational recurrence_window_average(const ShiftSystem& sys, std::size_t N);
// (1/N^3) sum over n1,n2,n3 in [1,N] of P(A & T^{n3-n2-n1} A & S^{n3-n2-n1} A).
Rational tripartite_identity_rhs(const ShiftSystem& sys, std::size_t N);
// (1/N) sum_{n=-2N}^{N} P(A & T^n A & S^n A).
Rational tripartite_upper_bound(const ShiftSystem& sys, std::size_t N);

// Tripartite graph on X = 0..M-1, Y = M..2M-1, Z = 2M..3M-1 with
//   x~y iff (x,y) in A,  y~z iff (z-y, y) in A,  x~z iff (x, z-x) in A.
// Triangles (x,y,z) correspond one-to-one to corners (x, y, r = z-x-y), so the
// ordered triangle count is 6 * count_corners(A).
Hypergraph corners_to_tripartite(const GridSet& a);

// `N` then one element per line; `#` comments.
ZnSet read_zn_set(std::istream& in);
void write_zn_set(std::ostream& out, const ZnSet& a);
ZnSet load_zn_set(const std::string& path);
// `M` then `x y` per line; `#` comments.
GridSet read_grid_set(std::istream& in);
void write_grid_set(std::ostream& out, const GridSet& a);
GridSet load_grid_set(const std::string& path);

}  // namespace rlab
