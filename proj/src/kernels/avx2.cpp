#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace sicnet::kernels {

namespace {

void path_gain_avx2(const double* r2, const double* h, double* out, std::size_t n, double alpha) {
  const double p = alpha / 2.0;
  const int ip = static_cast<int>(p);
  if (!(ip == p && ip >= 1 && ip <= 8)) {
    for (std::size_t i = 0; i < n; ++i) out[i] = h[i] * std::pow(r2[i], -p);
    return;
  }
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(r2 + i);
    __m256d d = r;
    for (int k = 1; k < ip; ++k) d = _mm256_mul_pd(d, r);
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(h + i), d));
  }
  for (; i < n; ++i) {
    double d = r2[i];
    for (int k = 1; k < ip; ++k) d *= r2[i];
    out[i] = h[i] / d;
  }
}

double sum_avx2(const double* v, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(v + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(v + i + 4));
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_add_pd(a0, _mm256_loadu_pd(v + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(a0, a1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += v[i];
  return s;
}

void sqdist_avx2(const double* x, const double* y, std::size_t n, double px, double py, double* out) {
  const __m256d vx = _mm256_set1_pd(px);
  const __m256d vy = _mm256_set1_pd(py);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vy);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
  }
  for (; i < n; ++i) {
    const double dx = x[i] - px;
    const double dy = y[i] - py;
    out[i] = dx * dx + dy * dy;
  }
}

std::size_t argmin_sqdist_avx2(const double* x, const double* y, std::size_t n, double px, double py) {
  const __m256d vx = _mm256_set1_pd(px);
  const __m256d vy = _mm256_set1_pd(py);
  __m256d best = _mm256_set1_pd(INFINITY);
  __m256d best_idx = _mm256_setzero_pd();
  __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d step = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vy);
    const __m256d d = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d lt = _mm256_cmp_pd(d, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, d, lt);
    best_idx = _mm256_blendv_pd(best_idx, idx, lt);
    idx = _mm256_add_pd(idx, step);
  }
  alignas(32) double bv[4];
  alignas(32) double bi[4];
  _mm256_store_pd(bv, best);
  _mm256_store_pd(bi, best_idx);
  double best_d = INFINITY;
  std::size_t best_i = 0;
  for (int l = 0; l < 4; ++l) {
    const auto li = static_cast<std::size_t>(bi[l]);
    if (bv[l] < best_d || (bv[l] == best_d && li < best_i)) {
      best_d = bv[l];
      best_i = li;
    }
  }
  for (; i < n; ++i) {
    const double dx = x[i] - px;
    const double dy = y[i] - py;
    const double d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best_i = i;
    }
  }
  return best_i;
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable table{path_gain_avx2, sum_avx2, sqdist_avx2, argmin_sqdist_avx2};
  return table;
}

}  // namespace sicnet::kernels
