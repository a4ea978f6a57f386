#include <cmath>

#include "doctest.h"
#include "sicnet/analytic.hpp"
#include "sicnet/errors.hpp"
#include "sicnet/numerics.hpp"

using namespace sicnet;
using doctest::Approx;

namespace {

NetworkConfig uplink_two_tier() {
  NetworkConfig cfg;
  cfg.tiers = {{1e-5, 10.0, 10.0, 1.0}, {1e-4, 1.0, 1.0, 1.0}};
  cfg.mu = 1e-4;
  cfg.mu_j = 1e-4;
  return cfg;
}

NetworkConfig downlink_two_tier(double bias) {
  NetworkConfig cfg;
  cfg.tiers = {{1e-5, 10.0, 1.0, 1.0}, {1e-4, 1.0, 1.0, bias}};
  cfg.mu = 1e-4;
  cfg.mu_j = 1e-4;
  return cfg;
}

}  // namespace

TEST_SUITE("association") {

TEST_CASE("max instantaneous SIR outage against high-precision values") {
  const auto cfg = uplink_two_tier();
  CHECK(outage_max_inst_sir(2.0, cfg) == Approx(0.67709784063938843).epsilon(1e-13));
  CHECK(ps_sic_max_inst_sir(2.0, 0, cfg) == Approx(1.0 - outage_max_inst_sir(2.0, cfg)).epsilon(1e-15));
  CHECK(ps_sic_max_inst_sir(2.0, 2, cfg) == Approx(0.439207717188).epsilon(1e-9));
}

TEST_CASE("SIC uplift under max instantaneous SIR association") {
  const auto cfg = uplink_two_tier();
  for (double db = 0.0; db <= 10.0; db += 1.0) {
    const double eta = db_to_linear(db);
    double prev = ps_sic_max_inst_sir(eta, 0, cfg);
    for (int n = 1; n <= 3; ++n) {
      const double v = ps_sic_max_inst_sir(eta, n, cfg);
      CHECK(v > prev);
      CHECK(v < 1.0);
      prev = v;
    }
  }
}

TEST_CASE("single tier outage reduces to the nearest-AP form") {
  // one tier: P_out = exp(-lambda / (e C0 mu_j))
  const auto cfg = NetworkConfig::single_tier(1e-4, 2e-4);
  const double eta = 3.0, e = std::sqrt(eta);
  CHECK(outage_max_inst_sir(eta, cfg) == Approx(std::exp(-1e-4 / (e * c_integral_at_zero(4.0) * 2e-4))).epsilon(1e-14));
}

TEST_CASE("range-expanded users against high-precision values") {
  const auto cfg = downlink_two_tier(5.0);
  CHECK(ps_ic_rea(1.0, cfg, 1, false) == Approx(0.266043297823805).epsilon(1e-10));
  CHECK(ps_ic_rea(1.0, cfg, 1, true) == Approx(0.293910339963239).epsilon(1e-10));
  const auto cfg2 = downlink_two_tier(2.0);
  CHECK(ps_ic_rea(0.3, cfg2, 1, false) == Approx(0.585956403326514).epsilon(1e-10));
  CHECK(ps_ic_rea(0.3, cfg2, 1, true) == Approx(0.605794280829249).epsilon(1e-10));
}

TEST_CASE("range-expanded users: cancelling helps, stronger bias hurts") {
  for (double db = -10.0; db <= 10.0; db += 2.0) {
    const double eta = db_to_linear(db);
    double prev_unc = 1.0, prev_can = 1.0;
    for (double b : {2.0, 5.0, 10.0}) {
      const auto cfg = downlink_two_tier(b);
      const double unc = ps_ic_rea(eta, cfg, 1, false);
      const double can = ps_ic_rea(eta, cfg, 1, true);
      CHECK(can > unc);
      CHECK(unc < prev_unc);
      CHECK(can < prev_can);
      prev_unc = unc;
      prev_can = can;
    }
  }
}

TEST_CASE("range-expanded formula rejects an empty region") {
  CHECK_THROWS_AS(ps_ic_rea(1.0, downlink_two_tier(1.0), 1, false), DomainError);
  CHECK_THROWS_AS(ps_ic_rea(1.0, downlink_two_tier(5.0), 2, false), DomainError);
}

}  // TEST_SUITE
