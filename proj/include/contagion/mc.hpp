#pragma once

#include <cstdint>
#include <utility>

#include "contagion/bond.hpp"
#include "contagion/cds.hpp"
#include "contagion/model.hpp"

namespace contagion::mc {

struct McConfig {
    std::int64_t paths = 100000;
    int steps_per_year = 200;
    std::uint64_t seed = 42;
    bool bridge = true;      // Brownian-bridge within-step crossing correction
    bool antithetic = false;

    bool operator==(const McConfig&) const = default;

    void validate() const {
        if (paths < 10000) throw std::invalid_argument("mc: paths must be >= 10^4");
        if (steps_per_year < 50) throw std::invalid_argument("mc: steps_per_year must be >= 50");
    }
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t paths = 0;
};

struct CdsLegsEstimate {
    McEstimate premium;     // E[K int_0^{min(tau,T)} e^{-rf s} ds]
    McEstimate protection;  // E[(1-R) K e^{-rf tau} 1{tau <= T}]
    McEstimate spread;      // protection/premium with first-order error propagation
};

// All basket flavors estimated from one path sweep (shared default times).
// second_contagion coincides with first by construction; the raw protection
// legs expose the swap-image identity: protection_ref1 + protection_ref2 =
// protection of the first-to-default swap.
struct BasketLegsEstimate {
    CdsLegsEstimate first;
    CdsLegsEstimate second;
    CdsLegsEstimate counterparty;  // reference = firm one
    McEstimate protection_ref1;
    McEstimate protection_ref2;
    McEstimate protection_first;
};

BasketLegsEstimate estimate_basket_cds_legs(const PairModel& model, double notional,
                                            double recovery, const McConfig& mc);

// Weighted survival estimator: per step the weight picks up the bridge
// non-crossing probabilities (1 - p1)(1 - p2).
McEstimate estimate_joint_survival(const PairModel& model, double t, const McConfig& mc);

// Discounted bond payoff under the contagion rule: min(omega V1(T), K1) on
// joint survival, else omega K1 e^{-rf T} at the first crossing.
McEstimate estimate_bond_price(const PairModel& model, const bond::BondContract& bond,
                               const McConfig& mc);

// Premium and protection legs for the contract's flavor; bridge-sampled
// crossings placed at step midpoints.
CdsLegsEstimate estimate_cds_legs(const PairModel& model, const cds::CdsContract& cds,
                                  const McConfig& mc);

}  // namespace contagion::mc
