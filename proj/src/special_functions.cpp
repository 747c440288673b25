#include "contagion/special_functions.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "contagion/quadrature.hpp"

namespace contagion::sf {

namespace {

struct GslQuietInit {
    GslQuietInit() { gsl_set_error_handler_off(); }
};
const GslQuietInit gsl_quiet_init;

void check_domain(double nu, double x) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw std::invalid_argument("bessel_i: order nu must be finite and >= 0");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("bessel_i: argument x must be finite and >= 0");
}

}  // namespace

double bessel_i_scaled(double nu, double x) {
    check_domain(nu, x);
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    gsl_sf_result res;
    // gsl_sf_bessel_Inu_scaled loses the nu = 0 case for large x; the
    // dedicated integer-order routine covers it.
    int status = nu == 0.0 ? gsl_sf_bessel_I0_scaled_e(x, &res)
                           : gsl_sf_bessel_Inu_scaled_e(nu, x, &res);
    if (status == GSL_EUNDRFLW) return 0.0;
    if (status != GSL_SUCCESS)
        throw std::runtime_error("bessel_i_scaled: GSL evaluation failed");
    return res.val < 0.0 ? 0.0 : res.val;
}

double bessel_i_integral_form(double nu, double x, int cos_nodes) {
    check_domain(nu, x);
    if (cos_nodes < 4) cos_nodes = 4;
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;

    const double pi = std::acos(-1.0);

    // First term: (1/pi) int_0^pi e^{x (cos phi - 1)} cos(nu phi) dphi.
    // Resolution must track both the oscillation (nu) and the width of the
    // e^{x(cos phi - 1)} peak at phi = 0 (~ 1/sqrt(x)).
    int m = cos_nodes + 4 * static_cast<int>(nu) + static_cast<int>(2.0 * std::sqrt(x));
    auto f1 = [&](double phi) { return std::exp(x * (std::cos(phi) - 1.0)) * std::cos(nu * phi); };
    double term1 = quad::integrate_1d(f1, 0.0, pi, m) / pi;

    double s = std::sin(nu * pi);
    if (s == 0.0) return term1;

    // Tail term: (sin(nu pi)/pi) int_0^inf e^{-x(cosh s + 1) - nu s} ds.
    // Monotone decreasing integrand; truncate where the exponent falls below
    // -45 and refine by panel doubling.
    double s_max;
    {
        double cap_nu = nu > 1e-8 ? 45.0 / nu : std::numeric_limits<double>::infinity();
        double cap_x = std::acosh(1.0 + 45.0 / x);
        s_max = std::min(cap_nu, cap_x);
    }
    auto f2 = [&](double u) { return std::exp(-x * (std::cosh(u) + 1.0) - nu * u); };
    double tail = quad::integrate_1d(f2, 0.0, s_max, cos_nodes);
    for (int k = 2 * cos_nodes; k <= 64 * cos_nodes; k *= 2) {
        double refined = quad::integrate_1d(f2, 0.0, s_max, k);
        bool converged = std::abs(refined - tail) <= 1e-14 * (1.0 + std::abs(refined));
        tail = refined;
        if (converged) break;
    }
    return term1 - s / pi * tail;
}

double norm_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

}  // namespace contagion::sf
