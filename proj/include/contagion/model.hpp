#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace contagion {

// Thrown when a series or quadrature fails to converge; distinct from the
// std::invalid_argument raised for domain errors.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Both firms start exactly on their barriers: survival is identically zero
// and the polar transform (r0, theta0) is undefined.
class degenerate_model_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// One firm's economic inputs. The default barrier is K e^{-gamma (T - t)},
// anchored at the contract maturity T carried by PairModel.
struct FirmParams {
    double v0    = 0.0;  // initial firm value
    double sigma = 0.0;  // volatility, yr^{-1/2}
    double q     = 0.0;  // dividend yield, yr^{-1}
    double gamma = 0.0;  // barrier growth rate, yr^{-1}
    double face  = 0.0;  // bond par value K

    // Initial barrier level b(0) = K e^{-gamma T}.
    double barrier0(double horizon) const { return face * std::exp(-gamma * horizon); }

    // Constant barrier in log coordinates, B = ln(b(0)/V0) <= 0.
    double log_barrier(double horizon) const { return std::log(barrier0(horizon) / v0); }

    void validate(double horizon, const std::string& label) const {
        if (!(v0 > 0.0)) throw std::invalid_argument(label + ": v0 must be > 0");
        if (!(sigma > 0.0)) throw std::invalid_argument(label + ": sigma must be > 0");
        if (!(face > 0.0)) throw std::invalid_argument(label + ": face must be > 0");
        if (!std::isfinite(q) || !std::isfinite(gamma))
            throw std::invalid_argument(label + ": q and gamma must be finite");
        if (log_barrier(horizon) > 0.0)
            throw std::invalid_argument(label + ": initial credit quality V0/b(0) must be >= 1");
    }
};

// Two firms, their correlation and the flat risk-free rate. horizon is the
// contract maturity the barriers are anchored at.
struct PairModel {
    FirmParams firm1;
    FirmParams firm2;
    double rho     = 0.0;
    double rf      = 0.0;
    double horizon = 0.0;

    double alpha1() const { return rf - firm1.q - firm1.gamma - 0.5 * firm1.sigma * firm1.sigma; }
    double alpha2() const { return rf - firm2.q - firm2.gamma - 0.5 * firm2.sigma * firm2.sigma; }
    double B1() const { return firm1.log_barrier(horizon); }
    double B2() const { return firm2.log_barrier(horizon); }

    void validate() const {
        if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
        firm1.validate(horizon, "firm1");
        firm2.validate(horizon, "firm2");
        if (!(std::abs(rho) < 1.0))
            throw std::invalid_argument("rho must lie strictly in (-1, 1)");
        if (std::abs(rho) > 0.99)
            throw std::invalid_argument("|rho| > 0.99: wedge angle degenerates");
        if (!std::isfinite(rf)) throw std::invalid_argument("rf must be finite");
    }
};

// Derived symbols of the wedge expansion: exponents a1, a2, rate b, wedge
// angle beta with cos(beta) = -rho, and the polar start point (r0, theta0).
struct PolarTransform {
    double a1 = 0.0;
    double a2 = 0.0;
    double b  = 0.0;
    double beta = 0.0;
    double r0 = 0.0;
    double theta0 = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;

    // Angular amplitude A(theta) = a1 sigma1 sin(beta - theta) + a2 sigma2 sin(theta).
    double amplitude(double theta) const {
        return a1 * sigma1 * std::sin(beta - theta) + a2 * sigma2 * std::sin(theta);
    }
};

enum class GridKind { tensor, sparse };

// Resolution knobs for the series and quadratures.
struct NumericsConfig {
    double series_tol = 1e-10;  // absolute truncation tolerance, probability scale
    int n_max         = 200;    // hard cap on series terms
    int theta_nodes   = 64;     // floor for the angular Gauss-Legendre rule
    int r_nodes       = 96;     // radial Gauss-Legendre rule
    int inner_nodes   = 64;     // Bessel integral-form inner rule
    GridKind grid_kind = GridKind::tensor;
    int sparse_level  = 10;     // Smolyak level for grid_kind = sparse
    int time_nodes    = 64;     // Gauss-Legendre nodes for time-leg integrals

    bool operator==(const NumericsConfig&) const = default;

    void validate() const {
        if (!(series_tol > 0.0)) throw std::invalid_argument("series_tol must be > 0");
        if (n_max < 8) throw std::invalid_argument("n_max must be >= 8");
        if (theta_nodes < 4 || r_nodes < 4 || inner_nodes < 4 || time_nodes < 4)
            throw std::invalid_argument("node counts must be >= 4");
        if (sparse_level < 2) throw std::invalid_argument("sparse_level must be >= 2");
    }
};

}  // namespace contagion
