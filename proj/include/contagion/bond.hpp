#pragma once

#include "contagion/model.hpp"

namespace contagion::bond {

// Zero-coupon bond of firm one under the contagion default rule.
struct BondContract {
    double face      = 100.0;  // par value K1
    double maturity  = 5.0;    // T, years
    double writedown = 0.7;    // omega_1 in (0, 1]

    void validate() const {
        if (!(maturity > 0.0)) throw std::invalid_argument("bond: maturity must be > 0");
        if (!(writedown > 0.0 && writedown <= 1.0))
            throw std::invalid_argument("bond: writedown must lie in (0, 1]");
        if (!(face > 0.0)) throw std::invalid_argument("bond: face must be > 0");
    }
};

// Sufficient consistency condition omega_1 <= min(1, e^{(rf - gamma_1) T}):
// the default payment never exceeds the firm value at default. Violations
// are reported, not rejected (the condition is sufficient, not necessary).
bool writedown_consistent(const PairModel& model, const BondContract& bond);

// Discounted maturity payment E[e^{-rf T} min(omega V1(T), K1); both survive].
// Requires rho >= 0 (contagion model restriction).
double discounted_maturity_payment(const PairModel& model, const BondContract& bond,
                                   const NumericsConfig& cfg);

// Discounted default payment omega K1 e^{-rf T} (1 - P(T)).
double discounted_default_payment(const PairModel& model, const BondContract& bond,
                                  const NumericsConfig& cfg);

// Yield y = -(1/T) ln((DMP + DDP) / K1) of the contagion bond.
double bond_yield(const PairModel& model, const BondContract& bond, const NumericsConfig& cfg);

// Price and yield of the same bond for a firm operating in isolation (no
// second firm, no contagion): closed-form single-barrier restricted density.
double single_firm_price(const FirmParams& firm, double rf, const BondContract& bond);
double single_firm_yield(const FirmParams& firm, double rf, const BondContract& bond,
                         const NumericsConfig& cfg);

}  // namespace contagion::bond
