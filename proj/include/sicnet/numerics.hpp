#pragma once

#include <cmath>
#include <cstddef>

#include "sicnet/quadrature.hpp"

namespace sicnet {

/// Gauss hypergeometric function 2F1(a, b; c; z) on the real half-line
/// z <= 0. Direct series near the origin, Pfaff transformation for
/// -2 <= z < -1/2 and the 1/z continuation below -2 (falling back to Pfaff
/// when a - b is an integer).
///
/// Throws DomainError for z > 0 or c a non-positive integer, NumericError
/// when a series does not converge within max_terms.
double gauss_2f1(double a, double b, double c, double z, std::size_t max_terms = 200000);

/// C(0, alpha) = (2 pi / alpha) csc(2 pi / alpha).
double c_integral_at_zero(double alpha);

/// C(b, alpha) = int_b^inf dw / (1 + w^(alpha/2)) in closed form through
/// gauss_2f1. Requires alpha > 2 and b >= 0.
double c_integral(double b, double alpha);

/// Same integral evaluated by adaptive quadrature on a finite range plus a
/// convergent asymptotic series for the tail. Independent of gauss_2f1.
double c_integral_by_quadrature(double b, double alpha, const QuadratureSettings& settings = {});

/// Pareto-type CDF of Y = h X^(-alpha) with h ~ Exp(1) and X uniform in a
/// disk of radius R:  1 - Gamma(2/alpha + 1) y^(-2/alpha) / R^2, clamped to [0, 1].
double pareto_received_power_cdf(double y, double alpha, double max_range);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear);

}  // namespace sicnet
