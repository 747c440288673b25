#include "contagion/survival.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "contagion/quadrature.hpp"
#include "contagion/special_functions.hpp"

namespace contagion::survival {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gaussian tail width: e^{-c^2/2} < 1e-21 at c = 10, comfortably past the
// 1e-16 truncation rule.
constexpr double kTailWidth = 10.0;

// Series truncation: stop after this many consecutive sub-tolerance terms.
constexpr int kQuietTerms = 4;

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

// Scan of the angular amplitude over the wedge, endpoints included.
std::pair<double, double> amplitude_range(const PolarTransform& pt) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int k = 0; k <= 64; ++k) {
        double a = pt.amplitude(pt.beta * k / 64.0);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    return {lo, hi};
}

struct SeriesState {
    double sum = 0.0;
    int quiet = 0;
    bool converged = false;

    void add(double term, double tol) {
        sum += term;
        quiet = std::abs(term) < tol ? quiet + 1 : 0;
        if (quiet >= kQuietTerms) converged = true;
    }
};

int sparse_level_for(const NumericsConfig& cfg, int n) {
    int bump = 0;
    while ((1 << bump) < n) ++bump;  // one extra level per doubling of n
    return cfg.sparse_level + bump;
}

}  // namespace

PolarTransform polar_transform(const PairModel& model) {
    model.validate();
    double B1 = model.B1(), B2 = model.B2();
    if (B1 == 0.0 && B2 == 0.0)
        throw degenerate_model_error("both firms start on their barriers: survival is 0");
    double s1 = model.firm1.sigma, s2 = model.firm2.sigma;
    double rho = model.rho;
    double a1d = model.alpha1(), a2d = model.alpha2();
    double omr2 = 1.0 - rho * rho;
    double sq = std::sqrt(omr2);

    PolarTransform pt;
    pt.sigma1 = s1;
    pt.sigma2 = s2;
    pt.a1 = (a1d * s2 - rho * a2d * s1) / (omr2 * s1 * s1 * s2);
    pt.a2 = (a2d * s1 - rho * a1d * s2) / (omr2 * s1 * s2 * s2);
    pt.b = -a1d * pt.a1 - a2d * pt.a2 + 0.5 * s1 * s1 * pt.a1 * pt.a1 +
           rho * s1 * s2 * pt.a1 * pt.a2 + 0.5 * s2 * s2 * pt.a2 * pt.a2;
    pt.beta = std::atan2(sq, -rho);
    pt.r0 = std::sqrt((B1 * B1 / (s1 * s1) - 2.0 * rho * B1 * B2 / (s1 * s2) +
                       B2 * B2 / (s2 * s2)) / omr2);
    // atan2 form of tan(theta0) = sigma1 B2 sqrt(1-rho^2) / (sigma2 B1 - rho sigma1 B2),
    // with both components negated so the angle lands on the [0, pi] branch.
    pt.theta0 = std::atan2(-s1 * B2 * sq, -s2 * B1 + rho * s1 * B2);
    pt.theta0 = std::min(std::max(pt.theta0, 0.0), pt.beta);
    return pt;
}

double marginal_survival_raw(double B, double alpha, double sigma, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("marginal_survival: t must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("marginal_survival: sigma must be > 0");
    if (B > 0.0) throw std::invalid_argument("marginal_survival: B must be <= 0");
    if (B == 0.0) return 0.0;
    double st = sigma * std::sqrt(t);
    double p = sf::norm_cdf((-B + alpha * t) / st) -
               std::exp(2.0 * alpha * B / (sigma * sigma)) * sf::norm_cdf((B + alpha * t) / st);
    return clamp01(p);
}

double marginal_survival(const FirmParams& firm, double rf, double horizon, double t) {
    double alpha = rf - firm.q - firm.gamma - 0.5 * firm.sigma * firm.sigma;
    return marginal_survival_raw(firm.log_barrier(horizon), alpha, firm.sigma, t);
}

namespace {

// Fast path: when the Frechet bounds pin the joint survival to within
// 1e-12 the series is skipped entirely. This is what makes t -> 0+
// evaluable: there the eigenfunction series needs O(r0 sqrt(1/t)) terms.
bool frechet_pinned(const PairModel& model, double t, double& out) {
    double s1 = marginal_survival_raw(model.B1(), model.alpha1(), model.firm1.sigma, t);
    double s2 = marginal_survival_raw(model.B2(), model.alpha2(), model.firm2.sigma, t);
    double lo = std::max(0.0, s1 + s2 - 1.0);
    double hi = std::min(s1, s2);
    if (hi - lo <= 1e-12) {
        out = clamp01(0.5 * (lo + hi));
        return true;
    }
    return false;
}

double joint_survival_tensor(const PairModel& model, const PolarTransform& pt, double t,
                             const NumericsConfig& cfg) {
    const double beta = pt.beta, r0 = pt.r0, theta0 = pt.theta0;
    auto [amin, amax] = amplitude_range(pt);
    double width = kTailWidth * std::sqrt(t);
    double r_lo = std::max(0.0, r0 + std::min(0.0, amin * t) - width);
    double r_hi = r0 + std::max(0.0, amax * t) + width;

    quad::Rule rr = quad::gauss_legendre(cfg.r_nodes);
    int nr = cfg.r_nodes;
    std::vector<double> rj(nr), base(nr), ibes(nr);
    double rmid = 0.5 * (r_lo + r_hi), rhalf = 0.5 * (r_hi - r_lo);
    for (int j = 0; j < nr; ++j) {
        rj[j] = rmid + rhalf * rr.nodes[j];
        base[j] = rr.weights[j] * rhalf * rj[j] *
                  std::exp(-(rj[j] - r0) * (rj[j] - r0) / (2.0 * t));
    }

    double prefactor = 2.0 / (beta * t) * std::exp(pt.a1 * model.B1() + pt.a2 * model.B2() + pt.b * t);

    SeriesState series;
    for (int n = 1; n <= cfg.n_max && !series.converged; ++n) {
        double nu = n * kPi / beta;
        for (int j = 0; j < nr; ++j) ibes[j] = sf::bessel_i_scaled(nu, rj[j] * r0 / t);

        // Angular rule grows with n so sin(n pi theta / beta) stays resolved.
        quad::Rule tr = quad::gauss_legendre(cfg.theta_nodes + n);
        double theta_sum = 0.0;
        for (std::size_t k = 0; k < tr.nodes.size(); ++k) {
            double theta = 0.5 * beta * (tr.nodes[k] + 1.0);
            double a = pt.amplitude(theta);
            double radial = 0.0;
            for (int j = 0; j < nr; ++j) radial += base[j] * std::exp(a * rj[j]) * ibes[j];
            theta_sum += tr.weights[k] * std::sin(nu * theta) * radial;
        }
        theta_sum *= 0.5 * beta;
        series.add(prefactor * std::sin(nu * theta0) * theta_sum, cfg.series_tol);
    }
    if (!series.converged)
        throw convergence_error("joint_survival: series cap reached with terms above tolerance");
    return clamp01(series.sum);
}

double joint_survival_sparse(const PairModel& model, const PolarTransform& pt, double t,
                             const NumericsConfig& cfg) {
    const double beta = pt.beta, r0 = pt.r0, theta0 = pt.theta0;
    auto [amin, amax] = amplitude_range(pt);
    double width = kTailWidth * std::sqrt(t);
    double r_lo = std::max(0.0, r0 + std::min(0.0, amin * t) - width);
    double r_hi = r0 + std::max(0.0, amax * t) + width;

    double prefactor = 2.0 / (beta * t) * std::exp(pt.a1 * model.B1() + pt.a2 * model.B2() + pt.b * t);

    SeriesState series;
    for (int n = 1; n <= cfg.n_max && !series.converged; ++n) {
        double nu = n * kPi / beta;
        quad::GridSpec spec;
        spec.kind = GridKind::sparse;
        spec.level = sparse_level_for(cfg, n);
        double integral = quad::integrate_2d(
            [&](double theta, double r) {
                return std::sin(nu * theta) * r *
                       std::exp(-(r - r0) * (r - r0) / (2.0 * t) + pt.amplitude(theta) * r) *
                       sf::bessel_i_scaled(nu, r * r0 / t);
            },
            {0.0, r_lo}, {beta, r_hi}, spec);
        series.add(prefactor * std::sin(nu * theta0) * integral, cfg.series_tol);
    }
    if (!series.converged)
        throw convergence_error("joint_survival: series cap reached with terms above tolerance");
    return clamp01(series.sum);
}

}  // namespace

double joint_survival(const PairModel& model, double t, const NumericsConfig& cfg) {
    model.validate();
    cfg.validate();
    if (!(t > 0.0)) throw std::invalid_argument("joint_survival: t must be > 0");
    if (model.B1() == 0.0 || model.B2() == 0.0) return 0.0;

    double pinned;
    if (frechet_pinned(model, t, pinned)) return pinned;

    PolarTransform pt = polar_transform(model);
    return cfg.grid_kind == GridKind::tensor ? joint_survival_tensor(model, pt, t, cfg)
                                             : joint_survival_sparse(model, pt, t, cfg);
}

double joint_survival_zero_drift(const PairModel& model, double t, const NumericsConfig& cfg) {
    model.validate();
    cfg.validate();
    if (!(t > 0.0)) throw std::invalid_argument("joint_survival_zero_drift: t must be > 0");
    if (std::abs(model.alpha1()) > 1e-12 || std::abs(model.alpha2()) > 1e-12)
        throw std::invalid_argument(
            "joint_survival_zero_drift: requires alpha_i = 0 (gamma_i = rf - q_i - sigma_i^2/2)");
    if (model.B1() == 0.0 || model.B2() == 0.0) return 0.0;

    double pinned;
    if (frechet_pinned(model, t, pinned)) return pinned;

    PolarTransform pt = polar_transform(model);
    const double beta = pt.beta, r0 = pt.r0, theta0 = pt.theta0;
    // The e^{-r0^2/4t} prefactor cancels the Bessel scaling exactly at
    // argument r0^2/4t, so only scaled evaluations appear.
    double x = r0 * r0 / (4.0 * t);
    double prefactor = 2.0 * r0 / std::sqrt(2.0 * kPi * t);

    SeriesState series;
    for (int n = 1; n <= cfg.n_max && !series.converged; n += 2) {
        double nu = n * kPi / beta;
        double term = std::sin(nu * theta0) / n *
                      (sf::bessel_i_scaled(0.5 * (nu + 1.0), x) +
                       sf::bessel_i_scaled(0.5 * (nu - 1.0), x));
        series.add(prefactor * term, cfg.series_tol);
    }
    if (!series.converged)
        throw convergence_error(
            "joint_survival_zero_drift: series cap reached with terms above tolerance");
    return clamp01(series.sum);
}

double restricted_exp_moment(const PairModel& model, double t, double epsilon,
                             double lowerA, double upperB, const NumericsConfig& cfg) {
    model.validate();
    cfg.validate();
    if (!(t > 0.0)) throw std::invalid_argument("restricted_exp_moment: t must be > 0");
    double B1 = model.B1(), B2 = model.B2();
    if (std::isnan(lowerA) || std::isnan(upperB) || lowerA > upperB)
        throw std::invalid_argument("restricted_exp_moment: malformed interval [A, B]");
    if (lowerA < B1 - 1e-12)
        throw std::invalid_argument("restricted_exp_moment: lower limit A must be >= B1");
    lowerA = std::max(lowerA, B1);
    if (B1 == 0.0 || B2 == 0.0 || lowerA == upperB) return 0.0;

    PolarTransform pt = polar_transform(model);
    const double beta = pt.beta, r0 = pt.r0, theta0 = pt.theta0;
    const double s1 = model.firm1.sigma;
    double width = kTailWidth * std::sqrt(t);
    double prefactor = 2.0 / (beta * t) *
                       std::exp((pt.a1 + epsilon) * B1 + pt.a2 * B2 + pt.b * t);

    // Radial limits and exponent coefficient at a given angle. The radial
    // window is intersected with the Gaussian support around r0.
    auto radial_box = [&](double theta, double& lo, double& hi, double& c) {
        double sbt = std::sin(beta - theta);
        c = pt.amplitude(theta) + epsilon * s1 * sbt;
        double rA = (lowerA - B1) / (s1 * sbt);
        double rB = std::isinf(upperB) ? std::numeric_limits<double>::infinity()
                                       : (upperB - B1) / (s1 * sbt);
        lo = std::max(rA, std::max(0.0, r0 + std::min(0.0, c * t) - width));
        hi = std::min(rB, r0 + std::max(0.0, c * t) + width);
    };

    // Sparse-branch box in the original (x1, x2) coordinates, where the
    // restriction boundary is a box edge and the Gaussian peak stays put:
    // x1 - B1 = sigma1 r sin(beta - theta), x2 - B2 = sigma2 r sin(theta),
    // dx1 dx2 = sigma1 sigma2 sin(beta) r dr dtheta. The box covers the
    // whole r <= r_cap region, past which the Gaussian factor is < 1e-21.
    const double s2 = model.firm2.sigma;
    const double sinb = std::sin(pt.beta);
    const double rho = model.rho;
    double r_cap;
    {
        auto [amin, amax] = amplitude_range(pt);
        (void)amin;
        double cmax = std::max(0.0, amax + std::max(0.0, epsilon) * s1);
        r_cap = r0 + cmax * t + width;
    }
    const double x1_lo = lowerA, x1_hi = std::min(upperB, B1 + s1 * r_cap);
    const double x2_lo = B2, x2_hi = B2 + s2 * r_cap;
    if (!(x1_lo < x1_hi)) return 0.0;  // restriction lies beyond the support

    SeriesState series;
    quad::Rule rr = quad::gauss_legendre(cfg.r_nodes);

    for (int n = 1; n <= cfg.n_max && !series.converged; ++n) {
        double nu = n * kPi / beta;
        double integral = 0.0;
        if (cfg.grid_kind == GridKind::tensor) {
            quad::Rule tr = quad::gauss_legendre(cfg.theta_nodes + n);
            for (std::size_t k = 0; k < tr.nodes.size(); ++k) {
                double theta = 0.5 * beta * (tr.nodes[k] + 1.0);
                double lo, hi, c;
                radial_box(theta, lo, hi, c);
                if (!(lo < hi)) continue;
                double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
                double radial = 0.0;
                for (std::size_t j = 0; j < rr.nodes.size(); ++j) {
                    double r = mid + half * rr.nodes[j];
                    radial += rr.weights[j] * r *
                              std::exp(-(r - r0) * (r - r0) / (2.0 * t) + c * r) *
                              sf::bessel_i_scaled(nu, r * r0 / t);
                }
                integral += tr.weights[k] * std::sin(nu * theta) * radial * half;
            }
            integral *= 0.5 * beta;
        } else {
            quad::GridSpec spec;
            spec.kind = GridKind::sparse;
            spec.level = sparse_level_for(cfg, n);
            integral = quad::integrate_2d(
                [&](double x1, double x2) {
                    double u = (x1 - B1) / s1, v = (x2 - B2) / s2;
                    double r = std::sqrt(std::max(0.0, u * u - 2.0 * rho * u * v + v * v)) / sinb;
                    double theta = std::atan2(v * sinb, u - rho * v);
                    theta = std::min(std::max(theta, 0.0), beta);
                    return std::sin(nu * theta) *
                           std::exp(-(r - r0) * (r - r0) / (2.0 * t) +
                                    (pt.a1 + epsilon) * (x1 - B1) + pt.a2 * (x2 - B2)) *
                           sf::bessel_i_scaled(nu, r * r0 / t) / (s1 * s2 * sinb);
                },
                {x1_lo, x2_lo}, {x1_hi, x2_hi}, spec);
        }
        series.add(prefactor * std::sin(nu * theta0) * integral, cfg.series_tol);
    }
    if (!series.converged)
        throw convergence_error(
            "restricted_exp_moment: series cap reached with terms above tolerance");
    return std::max(0.0, series.sum);
}

}  // namespace contagion::survival
