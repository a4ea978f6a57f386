#include <cmath>

#include "kernels_internal.hpp"

namespace sicnet::kernels {

namespace {

void path_gain_scalar(const double* r2, const double* h, double* out, std::size_t n, double alpha) {
  const double p = alpha / 2.0;
  const int ip = static_cast<int>(p);
  if (ip == p && ip >= 1 && ip <= 8) {
    for (std::size_t i = 0; i < n; ++i) {
      double d = r2[i];
      for (int k = 1; k < ip; ++k) d *= r2[i];
      out[i] = h[i] / d;
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = h[i] * std::pow(r2[i], -p);
}

double sum_scalar(const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += v[i];
  return s;
}

void sqdist_scalar(const double* x, const double* y, std::size_t n, double px, double py, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - px;
    const double dy = y[i] - py;
    out[i] = dx * dx + dy * dy;
  }
}

std::size_t argmin_sqdist_scalar(const double* x, const double* y, std::size_t n, double px, double py) {
  std::size_t best = 0;
  double best_d = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - px;
    const double dy = y[i] - py;
    const double d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{path_gain_scalar, sum_scalar, sqdist_scalar, argmin_sqdist_scalar};
  return table;
}

}  // namespace sicnet::kernels
