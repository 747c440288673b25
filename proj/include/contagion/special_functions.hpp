#pragma once

namespace contagion::sf {

// Scaled modified Bessel function of the first kind, e^{-x} I_nu(x), for
// nu >= 0 and x >= 0. Always in (0, 1] for x > 0; nu = 0, x = 0 gives 1 and
// nu > 0, x = 0 gives 0.
double bessel_i_scaled(double nu, double x);

// Same quantity evaluated from the integral representation
//   I_nu(x) = (1/pi) int_0^pi e^{x cos phi} cos(nu phi) dphi
//           - (sin(nu pi)/pi) int_0^inf e^{-x cosh s - nu s} ds,
// each term damped by e^{-x}. Slower; used as an independent cross-check of
// bessel_i_scaled and as the inner axis of the three-dimensional quadratures.
// cos_nodes controls the [0, pi] rule; the tail integral is refined
// adaptively starting from the same resolution.
double bessel_i_integral_form(double nu, double x, int cos_nodes = 64);

// Standard normal CDF.
double norm_cdf(double z);

}  // namespace contagion::sf
