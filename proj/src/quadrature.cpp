#include "sicnet/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "sicnet/errors.hpp"

namespace sicnet {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

double checked_eval(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os << "quadrature: integrand is not finite at x = " << x;
    throw NumericError(os.str());
  }
  return y;
}

Segment gauss_kronrod_15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked_eval(f, center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = checked_eval(f, center - dx) + checked_eval(f, center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1) {
    throw DomainError("QuadratureSettings: rel_tol, abs_tol must be > 0 and max_subdivisions >= 1");
  }
}

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureSettings& settings) {
  settings.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate: bounds must be finite");
  }
  if (a == b) return {};
  if (a > b) {
    auto r = integrate(f, b, a, settings);
    r.value = -r.value;
    return r;
  }

  std::priority_queue<Segment> heap;
  heap.push(gauss_kronrod_15(f, a, b));
  double total = heap.top().value;
  double total_err = heap.top().error;
  std::size_t splits = 0;

  auto tolerance = [&] { return std::max(settings.abs_tol, settings.rel_tol * std::abs(total)); };

  while (total_err > tolerance()) {
    if (splits >= settings.max_subdivisions) {
      std::ostringstream os;
      os << "integrate: no convergence on [" << a << ", " << b << "] after " << splits
         << " subdivisions (estimate " << total << ", error " << total_err << ")";
      throw NumericError(os.str());
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      std::ostringstream os;
      os << "integrate: interval [" << worst.a << ", " << worst.b
         << "] cannot be bisected further (error " << total_err << ")";
      throw NumericError(os.str());
    }
    heap.pop();
    const Segment left = gauss_kronrod_15(f, worst.a, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }

  // Re-sum to shed the drift of the running updates.
  QuadratureResult result;
  result.subdivisions = splits;
  while (!heap.empty()) {
    result.value += heap.top().value;
    result.abs_error += heap.top().error;
    heap.pop();
  }
  return result;
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a,
                                       const QuadratureSettings& settings) {
  if (!std::isfinite(a)) throw DomainError("integrate_to_infinity: lower bound must be finite");
  auto mapped = [&f, a](double t) {
    const double one_minus = 1.0 - t;
    if (one_minus <= 0.0) return 0.0;
    const double x = a + t / one_minus;
    const double y = f(x);
    if (y == 0.0) return 0.0;
    return y / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, settings);
}

}  // namespace sicnet
