#pragma once

#include <cstddef>

// Hot loops of the simulator. Each kernel has a scalar reference and, on x86-64,
// an AVX2 variant chosen at first use from CPUID. SICNET_KERNELS=scalar in the
// environment (or force_isa) pins the scalar path.

namespace sicnet::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  /// out[i] = h[i] * r2[i]^(-alpha/2)
  void (*path_gain)(const double* r2, const double* h, double* out, std::size_t n, double alpha);
  double (*sum)(const double* v, std::size_t n);
  /// out[i] = (x[i] - px)^2 + (y[i] - py)^2, no fused multiply-add.
  void (*sqdist)(const double* x, const double* y, std::size_t n, double px, double py, double* out);
  /// Index of the point closest to (px, py); lowest index on ties; n must be > 0.
  std::size_t (*argmin_sqdist)(const double* x, const double* y, std::size_t n, double px, double py);
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

bool avx2_supported();
Isa active_isa();
void force_isa(Isa isa);  // throws DomainError if unsupported
const char* isa_name(Isa isa);

const KernelTable& active();

inline void path_gain(const double* r2, const double* h, double* out, std::size_t n, double alpha) {
  active().path_gain(r2, h, out, n, alpha);
}
inline double sum(const double* v, std::size_t n) { return active().sum(v, n); }
inline void sqdist(const double* x, const double* y, std::size_t n, double px, double py, double* out) {
  active().sqdist(x, y, n, px, py, out);
}
inline std::size_t argmin_sqdist(const double* x, const double* y, std::size_t n, double px, double py) {
  return active().argmin_sqdist(x, y, n, px, py);
}

}  // namespace sicnet::kernels
