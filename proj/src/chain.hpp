#pragma once

#include <cstddef>
#include <vector>

#include "sicnet/montecarlo.hpp"

namespace sicnet::detail {

/// The strongest interferers of a scene in cancellation order, plus the
/// residual interference after each trim: residual[n] = sum_{i >= n} X_(i).
struct OrderedField {
  std::vector<double> top;
  std::vector<double> residual;  // size top.size() + 1
  std::vector<std::size_t> index_scratch;
  std::vector<double> rest_scratch;
};

/// Orders k powers p (with squared distances r2 for distance ordering) and
/// keeps the first min(n_keep, k).
void order_field(const double* p, const double* r2, std::size_t k, int n_keep, Ordering ordering,
                 OrderedField& out);

struct ChainResult {
  bool succeeded = false;
  int used = 0;
  FailureStage stage = FailureStage::none;
  int index = 0;
};

/// Decode the SoI; on failure cancel X_(1), X_(2), ... up to n_max, retrying
/// the SoI after each successful cancellation. The field must hold at least
/// min(n_max, k) ordered interferers.
inline ChainResult run_chain(double signal, const OrderedField& f, double eta, int n_max) {
  if (signal >= eta * f.residual[0]) return {true, 0, FailureStage::none, 0};
  if (n_max == 0) return {false, 0, FailureStage::decode_initial, 0};
  const int available = static_cast<int>(f.top.size());
  for (int n = 1; n <= n_max; ++n) {
    if (n > available) break;
    if (f.top[n - 1] < eta * f.residual[n]) return {false, n - 1, FailureStage::cancel_stage, n};
    if (signal >= eta * f.residual[n]) return {true, n, FailureStage::none, 0};
  }
  return {false, std::min(n_max, available), FailureStage::exhausted, 0};
}

}  // namespace sicnet::detail
