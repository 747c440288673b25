#pragma once

#include <string>

#include "contagion/model.hpp"

namespace contagion::cds {

enum class Flavor { first, second, second_contagion, counterparty_homogeneous };

std::string to_string(Flavor f);
Flavor flavor_from_string(const std::string& s);

// Continuous-premium swap on a two-name basket.
struct CdsContract {
    double notional = 100.0;
    double maturity = 5.0;   // T, years
    double recovery = 0.5;   // R in [0, 1]
    Flavor flavor   = Flavor::first;

    void validate() const {
        if (!(maturity > 0.0)) throw std::invalid_argument("cds: maturity must be > 0");
        if (!(recovery >= 0.0 && recovery <= 1.0))
            throw std::invalid_argument("cds: recovery must lie in [0, 1]");
        if (!(notional > 0.0)) throw std::invalid_argument("cds: notional must be > 0");
    }
};

// Fair continuous spread (pure rate, yr^-1) paying on the first default of
// the basket: (1-R){1 - e^{-rf T}P(T) - rf I} / I with I = int e^{-rf s}P(s)ds.
double first_to_default_spread(const PairModel& model, const CdsContract& cds,
                               const NumericsConfig& cfg);

// Same functional with P(tau_second > s) = S1(s) + S2(s) - P(s).
double second_to_default_spread(const PairModel& model, const CdsContract& cds,
                                const NumericsConfig& cfg);

// Under the contagion rule the second default coincides with the first;
// delegates to first_to_default_spread (identical code path). rho >= 0.
double second_to_default_spread_contagion(const PairModel& model, const CdsContract& cds,
                                          const NumericsConfig& cfg);

// Single-name CDS on firm one sold by firm two, both parameter-identical:
// the swap-image symmetry halves the protection leg, so c = c_first / 2.
double counterparty_cds_spread_homogeneous(const PairModel& model, const CdsContract& cds,
                                           const NumericsConfig& cfg);

// Dispatch on cds.flavor.
double spread(const PairModel& model, const CdsContract& cds, const NumericsConfig& cfg);

}  // namespace contagion::cds
