#include <atomic>
#include <cstdlib>
#include <cstring>

#include "rlab/kernels/bitops.hpp"

namespace rlab::kernels {

#if defined(RLAB_HAVE_AVX2)
const BitOps& avx2_table();
#endif

const BitOps* avx2_ops() {
#if defined(RLAB_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const BitOps* initial_choice() {
  const char* env = std::getenv("RLAB_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_ops();
  if (const BitOps* v = avx2_ops()) return v;
  return &scalar_ops();
}

std::atomic<const BitOps*>& active() {
  static std::atomic<const BitOps*> current{initial_choice()};
  return current;
}

}  // namespace

const BitOps& ops() { return *active().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) {
  const BitOps* target = isa == Isa::avx2 ? avx2_ops() : &scalar_ops();
  if (target == nullptr) return false;
  active().store(target, std::memory_order_relaxed);
  return true;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace rlab::kernels
