#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rlab/bitset.hpp"

namespace rlab {

// Subset A of the cyclic group Z_N.
struct ZnSet {
  std::size_t N = 0;
  Bitset members;

  // Elements must lie in [0, N); duplicates are ignored. Throws InputError.
  static ZnSet make(std::size_t N, const std::vector<std::int64_t>& elements);
  static ZnSet full(std::size_t N);
  bool contains(std::int64_t x) const;  // x is reduced mod N
  std::size_t size() const { return members.count(); }
};

}  // namespace rlab
