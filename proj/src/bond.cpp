#include "contagion/bond.hpp"

#include <cmath>
#include <limits>

#include "contagion/special_functions.hpp"
#include "contagion/survival.hpp"

namespace contagion::bond {

namespace {

void check_contagion_preconditions(const PairModel& model, const BondContract& bond) {
    model.validate();
    bond.validate();
    if (model.rho < 0.0)
        throw std::invalid_argument("contagion bond model requires rho >= 0");
    if (std::abs(bond.maturity - model.horizon) > 1e-12)
        throw std::invalid_argument("bond maturity must equal the model horizon");
}

}  // namespace

bool writedown_consistent(const PairModel& model, const BondContract& bond) {
    double cap = std::min(1.0, std::exp((model.rf - model.firm1.gamma) * bond.maturity));
    return bond.writedown <= cap + 1e-15;
}

double discounted_maturity_payment(const PairModel& model, const BondContract& bond,
                                   const NumericsConfig& cfg) {
    check_contagion_preconditions(model, bond);
    const double T = bond.maturity;
    const double K = bond.face;
    const double omega = bond.writedown;
    const double disc = std::exp(-model.rf * T);

    double dmp;
    if (omega == 1.0) {
        // ln(omega) = 0 collapses the write-down band: full par on survival.
        dmp = K * disc * survival::joint_survival(model, T, cfg);
    } else {
        double d = model.B1() - std::log(omega);
        double par_mass = survival::restricted_exp_moment(
            model, T, 0.0, d, std::numeric_limits<double>::infinity(), cfg);
        double writedown_mass = survival::restricted_exp_moment(model, T, 1.0, model.B1(), d, cfg);
        dmp = disc * (K * par_mass +
                      omega * model.firm1.v0 * std::exp(model.firm1.gamma * T) * writedown_mass);
    }
    return std::min(std::max(dmp, 0.0), K * disc);
}

double discounted_default_payment(const PairModel& model, const BondContract& bond,
                                  const NumericsConfig& cfg) {
    check_contagion_preconditions(model, bond);
    double P = (model.B1() == 0.0 || model.B2() == 0.0)
                   ? 0.0
                   : survival::joint_survival(model, bond.maturity, cfg);
    return bond.writedown * bond.face * std::exp(-model.rf * bond.maturity) * (1.0 - P);
}

double bond_yield(const PairModel& model, const BondContract& bond, const NumericsConfig& cfg) {
    double price = discounted_maturity_payment(model, bond, cfg) +
                   discounted_default_payment(model, bond, cfg);
    if (!(price > 0.0))
        throw std::runtime_error("bond_yield: non-positive bond price");
    return -std::log(price / bond.face) / bond.maturity;
}

namespace {

// Restricted terminal-law integrals for one drifted Brownian firm above a
// single barrier B (reflection principle):
//   f(x) = [phi((x-m)/s) - e^{2 alpha B/sigma^2} phi((x-2B-m)/s)] / s.
struct SingleFirmLaw {
    double m, s, B, refl;

    double mass(double a, double b) const {
        auto N = [&](double x) {
            return std::isinf(x) ? (x > 0 ? 1.0 : 0.0) : sf::norm_cdf(x);
        };
        return (N((b - m) / s) - N((a - m) / s)) -
               refl * (N((b - 2.0 * B - m) / s) - N((a - 2.0 * B - m) / s));
    }

    // int_a^b e^x f(x) dx
    double exp_mass(double a, double b) const {
        auto N = [&](double x) {
            return std::isinf(x) ? (x > 0 ? 1.0 : 0.0) : sf::norm_cdf(x);
        };
        double s2 = s * s;
        double t1 = std::exp(m + 0.5 * s2) * (N((b - m - s2) / s) - N((a - m - s2) / s));
        double t2 = std::exp(2.0 * B + m + 0.5 * s2) *
                    (N((b - 2.0 * B - m - s2) / s) - N((a - 2.0 * B - m - s2) / s));
        return t1 - refl * t2;
    }
};

}  // namespace

double single_firm_price(const FirmParams& firm, double rf, const BondContract& bond) {
    bond.validate();
    const double T = bond.maturity;
    firm.validate(T, "firm");
    const double K = bond.face;
    const double omega = bond.writedown;
    const double disc = std::exp(-rf * T);

    double B = firm.log_barrier(T);
    if (B == 0.0) return omega * K * disc;

    double alpha = rf - firm.q - firm.gamma - 0.5 * firm.sigma * firm.sigma;
    SingleFirmLaw law{alpha * T, firm.sigma * std::sqrt(T), B,
                      std::exp(2.0 * alpha * B / (firm.sigma * firm.sigma))};
    double inf = std::numeric_limits<double>::infinity();

    double d = B - std::log(omega);
    double maturity_leg =
        disc * (K * law.mass(d, inf) +
                omega * firm.v0 * std::exp(firm.gamma * T) * law.exp_mass(B, d));
    double default_leg = omega * K * disc * (1.0 - law.mass(B, inf));
    return maturity_leg + default_leg;
}

double single_firm_yield(const FirmParams& firm, double rf, const BondContract& bond,
                         const NumericsConfig& cfg) {
    (void)cfg;  // closed form; kept for interface symmetry with bond_yield
    double price = single_firm_price(firm, rf, bond);
    if (!(price > 0.0))
        throw std::runtime_error("single_firm_yield: non-positive bond price");
    return -std::log(price / bond.face) / bond.maturity;
}

}  // namespace contagion::bond
