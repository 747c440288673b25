#pragma once

#include <cmath>

#include "contagion/model.hpp"

namespace testing {

// Standard parameter set used throughout: sigma = 0.2, q = 0, gamma = 0.03,
// rf = 5%, face 100, initial credit quality 2, T = 5. V0 is derived from the
// quality as V0 = quality * K * e^{-gamma T}.
inline contagion::FirmParams firm(double quality = 2.0, double sigma = 0.2,
                                  double gamma = 0.03, double horizon = 5.0) {
    contagion::FirmParams f;
    f.v0 = quality * 100.0 * std::exp(-gamma * horizon);
    f.sigma = sigma;
    f.q = 0.0;
    f.gamma = gamma;
    f.face = 100.0;
    return f;
}

inline contagion::PairModel pair_model(double rho = 0.4, double sigma = 0.2,
                                       double quality = 2.0, double gamma = 0.03,
                                       double rf = 0.05, double horizon = 5.0) {
    contagion::PairModel m;
    m.firm1 = firm(quality, sigma, gamma, horizon);
    m.firm2 = firm(quality, sigma, gamma, horizon);
    m.rho = rho;
    m.rf = rf;
    m.horizon = horizon;
    return m;
}

// Zero-drift variant: gamma chosen so alpha = rf - q - gamma - sigma^2/2 = 0.
inline contagion::PairModel zero_drift_model(double rho, double sigma = 0.2,
                                             double quality = 2.0, double rf = 0.05,
                                             double horizon = 5.0) {
    return pair_model(rho, sigma, quality, rf - 0.5 * sigma * sigma, rf, horizon);
}

}  // namespace testing
