#include "rlab/kernels/bitops.hpp"

#include <bit>

namespace rlab::kernels {
namespace {

std::uint64_t popcount_scalar(const std::uint64_t* a, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i]);
  return total;
}

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::uint64_t and3_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b,
                                   const std::uint64_t* c, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i] & b[i] & c[i]);
  return total;
}

void and_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] &= src[i];
}

}  // namespace

const BitOps& scalar_ops() {
  static const BitOps table{popcount_scalar, and_popcount_scalar, and3_popcount_scalar,
                            and_into_scalar, Isa::scalar};
  return table;
}

}  // namespace rlab::kernels
