#include <cmath>
#include <stdexcept>

#include "contagion/mc.hpp"
#include "contagion/survival.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace contagion;
using testing::pair_model;

namespace {

mc::McConfig quick(std::int64_t paths = 20000, int steps = 50, std::uint64_t seed = 7) {
    mc::McConfig c;
    c.paths = paths;
    c.steps_per_year = steps;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_SUITE("mc") {

TEST_CASE("config invariants") {
    mc::McConfig c = quick(1000);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = quick(20000, 10);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("determinism across repeated runs") {
    PairModel m = pair_model(0.4);
    mc::McEstimate a = mc::estimate_joint_survival(m, 5.0, quick());
    mc::McEstimate b = mc::estimate_joint_survival(m, 5.0, quick());
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    mc::CdsLegsEstimate la = mc::estimate_cds_legs(m, cds::CdsContract{}, quick());
    mc::CdsLegsEstimate lb = mc::estimate_cds_legs(m, cds::CdsContract{}, quick());
    CHECK(la.spread.mean == lb.spread.mean);
}

TEST_CASE("natural bounds") {
    PairModel m = pair_model(0.4);
    mc::McEstimate s = mc::estimate_joint_survival(m, 5.0, quick());
    CHECK(s.mean >= 0.0);
    CHECK(s.mean <= 1.0);
    CHECK(s.std_error >= 0.0);
    mc::McEstimate p = mc::estimate_bond_price(m, bond::BondContract{}, quick());
    CHECK(p.mean >= 0.0);
    CHECK(p.mean <= 100.0 * std::exp(-0.25));
}

TEST_CASE("both firms on their barriers") {
    PairModel m = pair_model(0.4, 0.2, 1.0);
    mc::McEstimate s = mc::estimate_joint_survival(m, 5.0, quick());
    CHECK(s.mean == 0.0);
    CHECK(s.std_error == 0.0);
    mc::McEstimate p = mc::estimate_bond_price(m, bond::BondContract{}, quick());
    CHECK(p.mean == doctest::Approx(0.7 * 100.0 * std::exp(-0.25)).epsilon(1e-14));
}

TEST_CASE("bridge correction against the analytic survival") {
    NumericsConfig cfg;
    PairModel m = pair_model(0.5);
    double P = survival::joint_survival(m, 5.0, cfg);
    mc::McEstimate on = mc::estimate_joint_survival(m, 5.0, quick());
    CHECK(std::abs(on.mean - P) <= 3.0 * on.std_error);

    // without the correction the discrete monitoring misses crossings and
    // overstates survival
    mc::McConfig off = quick();
    off.bridge = false;
    mc::McEstimate biased = mc::estimate_joint_survival(m, 5.0, off);
    CHECK(biased.mean - P > 3.0 * biased.std_error);
}

TEST_CASE("step refinement consistency with the bridge on") {
    PairModel m = pair_model(0.4);
    mc::McEstimate a = mc::estimate_joint_survival(m, 5.0, quick(20000, 100));
    mc::McEstimate b = mc::estimate_joint_survival(m, 5.0, quick(20000, 200));
    double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
    CHECK(std::abs(a.mean - b.mean) <= 3.0 * se);
}

TEST_CASE("full recovery produces a zero protection leg") {
    PairModel m = pair_model(0.4);
    cds::CdsContract c;
    c.recovery = 1.0;
    mc::CdsLegsEstimate legs = mc::estimate_cds_legs(m, c, quick());
    CHECK(legs.protection.mean == 0.0);
    CHECK(legs.protection.std_error == 0.0);
    CHECK(legs.premium.mean > 0.0);
}

TEST_CASE("basket sweep decomposes the first-to-default protection leg") {
    PairModel m = pair_model(0.4);
    m.firm2.sigma = 0.3;  // asymmetric on purpose
    mc::BasketLegsEstimate bk = mc::estimate_basket_cds_legs(m, 100.0, 0.5, quick());
    // pathwise: exactly one reference wins each first default
    CHECK(bk.protection_ref1.mean + bk.protection_ref2.mean ==
          doctest::Approx(bk.protection_first.mean).epsilon(1e-12));
    // flavors share the simulated default times
    CHECK(bk.second.protection.mean <= bk.first.protection.mean);
    CHECK(bk.first.premium.mean <= bk.second.premium.mean);
    CHECK(bk.counterparty.premium.mean == bk.first.premium.mean);
}

TEST_CASE("homogeneous counterparty protection is half the first-to-default leg") {
    PairModel m = pair_model(0.4);
    mc::CdsLegsEstimate cp =
        mc::estimate_cds_legs(m, cds::CdsContract{100.0, 5.0, 0.5,
                                                  cds::Flavor::counterparty_homogeneous},
                              quick(50000, 50, 11));
    mc::CdsLegsEstimate first =
        mc::estimate_cds_legs(m, cds::CdsContract{100.0, 5.0, 0.5, cds::Flavor::first},
                              quick(50000, 50, 12));
    double se = std::sqrt(cp.protection.std_error * cp.protection.std_error +
                          0.25 * first.protection.std_error * first.protection.std_error);
    CHECK(std::abs(cp.protection.mean - 0.5 * first.protection.mean) <= 3.0 * se);
}

TEST_CASE("maturity must match the barrier anchor") {
    PairModel m = pair_model(0.4);
    bond::BondContract b;
    b.maturity = 3.0;
    CHECK_THROWS_AS(mc::estimate_bond_price(m, b, quick()), std::invalid_argument);
    cds::CdsContract c;
    c.maturity = 3.0;
    CHECK_THROWS_AS(mc::estimate_cds_legs(m, c, quick()), std::invalid_argument);
}

}  // TEST_SUITE
