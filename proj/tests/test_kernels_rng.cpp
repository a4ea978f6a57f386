#include <cmath>
#include <cstring>
#include <set>
#include <vector>

#include "doctest.h"
#include "sicnet/errors.hpp"
#include "sicnet/kernels.hpp"
#include "sicnet/rng.hpp"

using namespace sicnet;
using doctest::Approx;

namespace {

struct Inputs {
  std::vector<double> r2, h, x, y;
};

Inputs random_inputs(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Inputs in;
  for (std::size_t i = 0; i < n; ++i) {
    in.r2.push_back(1e-2 + 1e6 * rng.uniform());
    in.h.push_back(rng.exponential());
    in.x.push_back(2000.0 * rng.uniform() - 1000.0);
    in.y.push_back(2000.0 * rng.uniform() - 1000.0);
  }
  return in;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_SUITE("rng") {

TEST_CASE("SplitMix64 reference sequence") {
  // Reference output of the published splitmix64.c for seed 1234567.
  SplitMix64 g(1234567);
  CHECK(g() == 6457827717110365317ULL);
  CHECK(g() == 3203168211198807973ULL);
  CHECK(g() == 9817491932198370423ULL);
  CHECK(g() == 4593380528125082431ULL);
  CHECK(g() == 16408922859458223821ULL);
}

TEST_CASE("uniform draws stay in range") {
  SplitMix64 g(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = g.uniform();
    const double v = g.uniform_open_low();
    CHECK_UNARY(u >= 0.0);
    CHECK_UNARY(u < 1.0);
    CHECK_UNARY(v > 0.0);
    CHECK_UNARY(v <= 1.0);
  }
}

TEST_CASE("per-trial streams are reproducible and distinct") {
  std::set<std::uint64_t> first;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    SplitMix64 a = trial_stream(99, t);
    SplitMix64 b = trial_stream(99, t);
    const auto va = a();
    CHECK(va == b());
    first.insert(va);
  }
  CHECK(first.size() == 10000);
  SplitMix64 c = trial_stream(100, 0);
  SplitMix64 d = trial_stream(99, 0);
  CHECK(c() != d());
}

TEST_CASE("exponential and Poisson moments") {
  SplitMix64 g(11);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = g.exponential();
    s += e;
    s2 += e * e;
  }
  CHECK(s / n == Approx(1.0).epsilon(0.01));
  CHECK(s2 / n == Approx(2.0).epsilon(0.03));
  for (double mean : {0.5, 8.0, 300.0}) {
    double k = 0.0;
    for (int i = 0; i < 20000; ++i) k += static_cast<double>(poisson(g, mean));
    CHECK(k / 20000 == Approx(mean).epsilon(5.0 / std::sqrt(20000.0 * mean)));
  }
  CHECK(poisson(g, 0.0) == 0);
}

}  // TEST_SUITE

TEST_SUITE("kernels") {

TEST_CASE("dispatch honours the forced ISA") {
  const auto before = kernels::active_isa();
  kernels::force_isa(kernels::Isa::scalar);
  CHECK(kernels::active_isa() == kernels::Isa::scalar);
  if (!kernels::avx2_supported()) CHECK_THROWS_AS(kernels::force_isa(kernels::Isa::avx2), DomainError);
  kernels::force_isa(before);
  CHECK(std::string(kernels::isa_name(kernels::Isa::avx2)) == "avx2");
}

TEST_CASE("scalar kernels match direct evaluation") {
  const auto in = random_inputs(37, 5);
  const auto& s = kernels::scalar_table();
  std::vector<double> out(in.r2.size());
  s.path_gain(in.r2.data(), in.h.data(), out.data(), out.size(), 3.3);
  for (std::size_t i = 0; i < out.size(); ++i)
    CHECK(out[i] == Approx(in.h[i] * std::pow(in.r2[i], -1.65)).epsilon(1e-14));
  s.path_gain(in.r2.data(), in.h.data(), out.data(), out.size(), 4.0);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == Approx(in.h[i] / (in.r2[i] * in.r2[i])).epsilon(1e-15));
  double total = 0.0;
  for (double v : in.h) total += v;
  CHECK(s.sum(in.h.data(), in.h.size()) == Approx(total).epsilon(1e-15));
  s.sqdist(in.x.data(), in.y.data(), in.x.size(), 3.0, -4.0, out.data());
  std::size_t best = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double dx = in.x[i] - 3.0, dy = in.y[i] + 4.0;
    CHECK(same_bits(out[i], dx * dx + dy * dy));
    if (out[i] < out[best]) best = i;
  }
  CHECK(s.argmin_sqdist(in.x.data(), in.y.data(), in.x.size(), 3.0, -4.0) == best);
}

TEST_CASE("argmin picks the lowest index on ties") {
  const std::vector<double> x = {1.0, -1.0, 1.0, 0.0, 5.0, 1.0, -1.0, 1.0, 0.0};
  const std::vector<double> y = {0.0, 0.0, 0.0, 1.0, 5.0, 0.0, 0.0, 0.0, -1.0};
  CHECK(kernels::scalar_table().argmin_sqdist(x.data(), y.data(), x.size(), 0.0, 0.0) == 0);
  if (const auto* v = kernels::avx2_table(); v && kernels::avx2_supported())
    CHECK(v->argmin_sqdist(x.data(), y.data(), x.size(), 0.0, 0.0) == 0);
}

TEST_CASE("AVX2 kernels are equivalent to the scalar reference") {
  const auto* v = kernels::avx2_table();
  if (!v || !kernels::avx2_supported()) {
    MESSAGE("AVX2 variant not available on this machine; equivalence not exercised");
    return;
  }
  const auto& s = kernels::scalar_table();
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 31u, 64u, 1001u}) {
    CAPTURE(n);
    const auto in = random_inputs(n, 1000 + n);
    std::vector<double> a(n), b(n);
    for (double alpha : {4.0, 6.0, 3.0, 3.7}) {
      s.path_gain(in.r2.data(), in.h.data(), a.data(), n, alpha);
      v->path_gain(in.r2.data(), in.h.data(), b.data(), n, alpha);
      for (std::size_t i = 0; i < n; ++i) {
        if (alpha == 4.0 || alpha == 6.0)
          CHECK(same_bits(a[i], b[i]));
        else
          CHECK(b[i] == Approx(a[i]).epsilon(1e-15));
      }
    }
    // sum uses a different association order; agreement to rounding only
    const double ss = s.sum(in.h.data(), n), vs = v->sum(in.h.data(), n);
    CHECK(std::abs(ss - vs) <= 1e-15 * n * (std::abs(ss) + 1.0));
    s.sqdist(in.x.data(), in.y.data(), n, 12.5, -3.25, a.data());
    v->sqdist(in.x.data(), in.y.data(), n, 12.5, -3.25, b.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(a[i], b[i]));
    if (n > 0)
      CHECK(s.argmin_sqdist(in.x.data(), in.y.data(), n, 12.5, -3.25) ==
            v->argmin_sqdist(in.x.data(), in.y.data(), n, 12.5, -3.25));
  }
}

}  // TEST_SUITE
