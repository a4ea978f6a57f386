#pragma once

#include <cstddef>
#include <functional>

namespace sicnet {

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_subdivisions = 2000;

  /// Throws DomainError unless all fields are strictly positive.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. The interval with
/// the largest error estimate is bisected until the summed estimate drops
/// below max(abs_tol, rel_tol * |value|).
///
/// Throws NumericError when max_subdivisions is exhausted first.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureSettings& settings = {});

/// Integral over [a, inf) through the map x = a + t / (1 - t), t in [0, 1).
QuadratureResult integrate_to_infinity(const Integrand& f, double a,
                                       const QuadratureSettings& settings = {});

}  // namespace sicnet
