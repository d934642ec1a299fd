#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Word-array kernels behind every bitset intersection count in the library
// (triangle counting, AP/corner counting, point-set measures). A portable
// scalar reference and an AVX2 variant are selected once at runtime.
namespace rlab::kernels {

enum class Isa { scalar, avx2 };

struct BitOps {
  std::uint64_t (*popcount)(const std::uint64_t* a, std::size_t words);
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
  std::uint64_t (*and3_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                 const std::uint64_t* c, std::size_t words);
  void (*and_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  Isa isa;
};

const BitOps& scalar_ops();
// nullptr when the build or the CPU lacks AVX2.
const BitOps* avx2_ops();

// Chosen at first use: AVX2 when available unless RLAB_SIMD=scalar is set.
const BitOps& ops();
// Test hook; returns false if the requested variant is unavailable.
bool force_isa(Isa isa);
std::string_view isa_name(Isa isa);

}  // namespace rlab::kernels
