#include <array>
#include <cmath>
#include <stdexcept>

#include "contagion/quadrature.hpp"
#include "contagion/special_functions.hpp"
#include "doctest.h"

using namespace contagion;
using quad::GridSpec;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_SUITE("quadrature") {

TEST_CASE("polynomial exactness in 1d") {
    double v = quad::integrate_1d([](double x) { return x * x; }, 0.0, 1.0, 4);
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // degree 2n-1 exactness: x^7 with 4 nodes
    double v7 = quad::integrate_1d([](double x) { return std::pow(x, 7.0); }, 0.0, 1.0, 4);
    CHECK(v7 == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("smooth 1d closed forms") {
    double s = quad::integrate_1d([](double x) { return std::sin(x); }, 0.0, kPi, 32);
    CHECK(s == doctest::Approx(2.0).epsilon(1e-12));
    double e = quad::integrate_1d([](double x) { return std::exp(x); }, 0.0, 1.0, 16);
    CHECK(e == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("non-finite integrand sample aborts") {
    CHECK_THROWS_AS(
        quad::integrate_1d([](double x) { return 1.0 / (x - x); }, 0.0, 1.0, 8),
        std::runtime_error);
}

TEST_CASE("unit volume in 2d and 3d, both backends") {
    for (GridKind kind : {GridKind::tensor, GridKind::sparse}) {
        GridSpec spec;
        spec.kind = kind;
        spec.level = 5;
        double v2 = quad::integrate_2d([](double, double) { return 1.0; }, {0.0, 0.0},
                                       {1.0, 1.0}, spec);
        double v3 = quad::integrate_3d([](double, double, double) { return 1.0; },
                                       {0.0, 0.0, 0.0}, {2.0, 1.0, 0.5}, spec);
        CHECK(v2 == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(v3 == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("separable polynomial product") {
    auto f = [](double x, double y, double z) { return x * x * (y + 1.0) * z * z * z; };
    double expect = (1.0 / 3.0) * (3.0 / 2.0) * (1.0 / 4.0);
    GridSpec tensor;
    double vt = quad::integrate_3d(f, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, tensor);
    CHECK(vt == doctest::Approx(expect).epsilon(1e-13));
    GridSpec sparse;
    sparse.kind = GridKind::sparse;
    sparse.level = 7;
    double vs = quad::integrate_3d(f, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, sparse);
    CHECK(vs == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("representative maturity-payment integrand: tensor vs sparse") {
    // The (theta, r, phi) kernel shape at rho = 0.4, t = 5: an angular sine
    // eigenfunction, a radial Gaussian ridge with an exponential tilt, and
    // the damped Bessel cos-integral as the inner axis.
    const double rho = 0.4, t = 5.0;
    const double beta = std::atan2(std::sqrt(1.0 - rho * rho), -rho);
    const double r0 = 3.4657359 * std::sqrt(2.0 / (1.0 + rho));
    const double nu = kPi / beta;
    auto f = [&](double theta, double r, double phi) {
        double x = r * r0 / t;
        return std::sin(nu * theta) * r *
               std::exp(-(r - r0) * (r - r0) / (2.0 * t) + 0.1 * std::sin(beta - theta) * r) *
               std::exp(x * (std::cos(phi) - 1.0)) * std::cos(nu * phi) / kPi;
    };
    std::array<double, 3> lo = {0.0, 0.0, 0.0};
    std::array<double, 3> hi = {beta, r0 + 10.0 * std::sqrt(t), kPi};
    GridSpec tensor;
    tensor.nodes = {48, 96, 64};
    double vt = quad::integrate_3d(f, lo, hi, tensor);
    // The oscillatory inner axis slows the Smolyak rate in 3d; level 13 is
    // the first level inside 1e-7 relative for this kernel.
    GridSpec sparse;
    sparse.kind = GridKind::sparse;
    sparse.level = 13;
    double vs = quad::integrate_3d(f, lo, hi, sparse);
    CHECK(std::abs(vt - vs) <= 1e-7 * std::abs(vt));
}

TEST_CASE("time leg closed forms") {
    double a = quad::integrate_time_leg([](double) { return 1.0; }, 0.05, 5.0, 64);
    CHECK(a == doctest::Approx((1.0 - std::exp(-0.25)) / 0.05).epsilon(1e-13));
    double b = quad::integrate_time_leg([](double s) { return std::exp(-0.1 * s); }, 0.05, 5.0, 64);
    CHECK(b == doctest::Approx((1.0 - std::exp(-0.75)) / 0.15).epsilon(1e-12));
}

TEST_CASE("time leg refinement stability") {
    auto P = [](double s) { return std::exp(-0.04 * s) * (1.0 + 0.01 * std::sin(s)); };
    double v64 = quad::integrate_time_leg(P, 0.05, 5.0, 64);
    double v128 = quad::integrate_time_leg(P, 0.05, 5.0, 128);
    CHECK(std::abs(v64 - v128) <= 1e-7 * std::abs(v128));
}

TEST_CASE("determinism") {
    auto f = [](double x, double y) { return std::exp(-x * y) * std::cos(3.0 * x); };
    GridSpec sparse;
    sparse.kind = GridKind::sparse;
    double a = quad::integrate_2d(f, {0.0, 0.0}, {2.0, 2.0}, sparse);
    double b = quad::integrate_2d(f, {0.0, 0.0}, {2.0, 2.0}, sparse);
    CHECK(a == b);
}

TEST_CASE("malformed boxes rejected") {
    GridSpec spec;
    CHECK_THROWS_AS(quad::integrate_2d([](double, double) { return 1.0; }, {1.0, 0.0},
                                       {0.0, 1.0}, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(quad::integrate_1d([](double) { return 1.0; }, 1.0, 0.0, 8),
                    std::invalid_argument);
}

}  // TEST_SUITE
