#include "contagion/cds.hpp"

#include <cmath>
#include <functional>

#include "contagion/quadrature.hpp"
#include "contagion/survival.hpp"

namespace contagion::cds {

std::string to_string(Flavor f) {
    switch (f) {
        case Flavor::first: return "first";
        case Flavor::second: return "second";
        case Flavor::second_contagion: return "second_contagion";
        case Flavor::counterparty_homogeneous: return "counterparty";
    }
    return "?";
}

Flavor flavor_from_string(const std::string& s) {
    if (s == "first") return Flavor::first;
    if (s == "second") return Flavor::second;
    if (s == "second_contagion") return Flavor::second_contagion;
    if (s == "counterparty" || s == "counterparty_homogeneous")
        return Flavor::counterparty_homogeneous;
    throw std::invalid_argument("unknown CDS flavor: " + s);
}

namespace {

void check(const PairModel& model, const CdsContract& cds, Flavor expected) {
    model.validate();
    cds.validate();
    if (cds.flavor != expected)
        throw std::invalid_argument("cds flavor does not match the requested pricer");
    if (std::abs(cds.maturity - model.horizon) > 1e-12)
        throw std::invalid_argument("cds maturity must equal the model horizon");
}

// (1-R){1 - e^{-rf T} S(T) - rf I} / I for a survival curve S.
double spread_from_curve(const std::function<double(double)>& S, double R, double rf, double T,
                         int time_nodes) {
    double I = quad::integrate_time_leg(S, rf, T, time_nodes);
    if (!(I > 0.0)) throw std::runtime_error("cds spread: degenerate premium leg");
    double c = (1.0 - R) * (1.0 - std::exp(-rf * T) * S(T) - rf * I) / I;
    return std::max(0.0, c);
}

}  // namespace

double first_to_default_spread(const PairModel& model, const CdsContract& cds,
                               const NumericsConfig& cfg) {
    check(model, cds, Flavor::first);
    auto S = [&](double s) { return survival::joint_survival(model, s, cfg); };
    return spread_from_curve(S, cds.recovery, model.rf, cds.maturity, cfg.time_nodes);
}

double second_to_default_spread(const PairModel& model, const CdsContract& cds,
                                const NumericsConfig& cfg) {
    check(model, cds, Flavor::second);
    const double T = cds.maturity;
    auto S = [&](double s) {
        double s1 = survival::marginal_survival(model.firm1, model.rf, T, s);
        double s2 = survival::marginal_survival(model.firm2, model.rf, T, s);
        return std::min(1.0, s1 + s2 - survival::joint_survival(model, s, cfg));
    };
    return spread_from_curve(S, cds.recovery, model.rf, T, cfg.time_nodes);
}

double second_to_default_spread_contagion(const PairModel& model, const CdsContract& cds,
                                          const NumericsConfig& cfg) {
    check(model, cds, Flavor::second_contagion);
    if (model.rho < 0.0)
        throw std::invalid_argument("contagion flavor requires rho >= 0");
    CdsContract as_first = cds;
    as_first.flavor = Flavor::first;
    return first_to_default_spread(model, as_first, cfg);
}

double counterparty_cds_spread_homogeneous(const PairModel& model, const CdsContract& cds,
                                           const NumericsConfig& cfg) {
    check(model, cds, Flavor::counterparty_homogeneous);
    const FirmParams &f1 = model.firm1, &f2 = model.firm2;
    bool homogeneous = f1.v0 == f2.v0 && f1.sigma == f2.sigma && f1.q == f2.q &&
                       f1.gamma == f2.gamma && f1.face == f2.face;
    if (!homogeneous)
        throw std::invalid_argument(
            "counterparty CDS: firms must be parameter-identical (asymmetric case unsupported)");
    CdsContract as_first = cds;
    as_first.flavor = Flavor::first;
    // Identical premium leg; swap-image symmetry halves the protection leg.
    return 0.5 * first_to_default_spread(model, as_first, cfg);
}

double spread(const PairModel& model, const CdsContract& cds, const NumericsConfig& cfg) {
    switch (cds.flavor) {
        case Flavor::first: return first_to_default_spread(model, cds, cfg);
        case Flavor::second: return second_to_default_spread(model, cds, cfg);
        case Flavor::second_contagion: return second_to_default_spread_contagion(model, cds, cfg);
        case Flavor::counterparty_homogeneous:
            return counterparty_cds_spread_homogeneous(model, cds, cfg);
    }
    throw std::logic_error("unreachable");
}

}  // namespace contagion::cds
