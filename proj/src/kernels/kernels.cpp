#include "cairn/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace cairn::kernels {

const Ops* avx2_ops_impl();  // defined in kernels_avx2.cpp

const Ops* avx2_ops() {
#if defined(__x86_64__) || defined(__i386__)
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return nullptr;
  return avx2_ops_impl();
#else
  return nullptr;
#endif
}

namespace {

std::atomic<const Ops*> g_forced{nullptr};

const Ops* dispatch() {
  if (const char* env = std::getenv("CAIRN_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(env, "avx2") == 0) {
      if (const Ops* ops = avx2_ops()) return ops;
      return &scalar_ops();
    }
  }
  if (const Ops* ops = avx2_ops()) return ops;
  return &scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  if (const Ops* forced = g_forced.load(std::memory_order_relaxed))
    return *forced;
  static const Ops* selected = dispatch();
  return *selected;
}

void force_ops(const Ops* ops) { g_forced.store(ops, std::memory_order_relaxed); }

}  // namespace cairn::kernels
