#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"
#include "sicnet/errors.hpp"

namespace sicnet::kernels {

namespace {

Isa detect() {
  const char* env = std::getenv("SICNET_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

std::atomic<int>& current() {
  static std::atomic<int> isa{static_cast<int>(detect())};
  return isa;
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(SICNET_BUILD_AVX2)
  return &avx2_table_impl();
#else
  return nullptr;
#endif
}

bool avx2_supported() {
#if defined(SICNET_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() { return static_cast<Isa>(current().load(std::memory_order_relaxed)); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_supported()) throw DomainError("AVX2 kernels are not available on this CPU/build");
  current().store(static_cast<int>(isa), std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& active() {
  if (active_isa() == Isa::avx2) {
    if (const KernelTable* t = avx2_table()) return *t;
  }
  return scalar_table();
}

}  // namespace sicnet::kernels
