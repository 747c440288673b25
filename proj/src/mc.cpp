#include "contagion/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "contagion/rng.hpp"

namespace contagion::mc {

namespace {

constexpr std::int64_t kBlock = 4096;

// Pairwise reduction over fixed-size path blocks: the result is independent
// of any parallel scheduling of the blocks.
double pairwise_sum(std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return v[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(std::vector<double> v) {
    if (v.empty()) return 0.0;
    return pairwise_sum(v, 0, v.size());
}

struct Moments {
    std::vector<double> block_sum, block_sum2;
    double cur = 0.0, cur2 = 0.0;
    std::int64_t in_block = 0;

    void add(double x) {
        cur += x;
        cur2 += x * x;
        if (++in_block == kBlock) flush();
    }
    void flush() {
        if (in_block == 0) return;
        block_sum.push_back(cur);
        block_sum2.push_back(cur2);
        cur = cur2 = 0.0;
        in_block = 0;
    }
    McEstimate finish(std::int64_t n) {
        flush();
        double s = pairwise_sum(std::move(block_sum));
        double s2 = pairwise_sum(std::move(block_sum2));
        double mean = s / n;
        double var = std::max(0.0, s2 / n - mean * mean);
        return {mean, std::sqrt(var / n), n};
    }
};

struct PairMoments {
    Moments a, b;
    std::vector<double> block_cross;
    double cur = 0.0;
    std::int64_t in_block = 0;

    void add(double x, double y) {
        a.add(x);
        b.add(y);
        cur += x * y;
        if (++in_block == kBlock) {
            block_cross.push_back(cur);
            cur = 0.0;
            in_block = 0;
        }
    }
    double finish_cross(std::int64_t n) {
        if (in_block > 0) block_cross.push_back(cur);
        return pairwise_sum(std::move(block_cross)) / n;
    }
};

struct StepScheme {
    double B1, B2, a1dt, a2dt, s1rt, s2rt, rho, rho_c, inv_var1, inv_var2;
    int n_steps;
    double dt;

    StepScheme(const PairModel& m, double horizon, int steps_per_year) {
        n_steps = std::max(1, static_cast<int>(std::llround(horizon * steps_per_year)));
        dt = horizon / n_steps;
        B1 = m.B1();
        B2 = m.B2();
        a1dt = m.alpha1() * dt;
        a2dt = m.alpha2() * dt;
        s1rt = m.firm1.sigma * std::sqrt(dt);
        s2rt = m.firm2.sigma * std::sqrt(dt);
        rho = m.rho;
        rho_c = std::sqrt(1.0 - m.rho * m.rho);
        inv_var1 = 1.0 / (m.firm1.sigma * m.firm1.sigma * dt);
        inv_var2 = 1.0 / (m.firm2.sigma * m.firm2.sigma * dt);
    }
};

// One-sided bridge crossing probability for a step with both endpoints
// above the barrier: exp(-2 (prev - B)(next - B) / (sigma^2 dt)).
inline double bridge_prob(double prev, double next, double B, double inv_var) {
    double e = -2.0 * (prev - B) * (next - B) * inv_var;
    return e < -45.0 ? 0.0 : std::exp(e);
}

}  // namespace

McEstimate estimate_joint_survival(const PairModel& model, double t, const McConfig& mc) {
    model.validate();
    mc.validate();
    if (!(t > 0.0)) throw std::invalid_argument("estimate_joint_survival: t must be > 0");

    StepScheme sch(model, t, mc.steps_per_year);
    if (sch.B1 == 0.0 || sch.B2 == 0.0) return {0.0, 0.0, mc.paths};

    Moments acc;
    for (std::int64_t p = 0; p < mc.paths; ++p) {
        double value = 0.0;
        int reps = mc.antithetic ? 2 : 1;
        for (int rep = 0; rep < reps; ++rep) {
            rng::Philox gen(mc.seed, static_cast<std::uint64_t>(p));
            double sign = rep == 0 ? 1.0 : -1.0;
            double x1 = 0.0, x2 = 0.0, w = 1.0;
            for (int k = 0; k < sch.n_steps; ++k) {
                double z1, z2;
                gen.next_normal_pair(z1, z2);
                z1 *= sign;
                z2 *= sign;
                double w2 = sch.rho * z1 + sch.rho_c * z2;
                double y1 = x1 + sch.a1dt + sch.s1rt * z1;
                double y2 = x2 + sch.a2dt + sch.s2rt * w2;
                if (y1 <= sch.B1 || y2 <= sch.B2) {
                    w = 0.0;
                    break;
                }
                if (mc.bridge) {
                    w *= (1.0 - bridge_prob(x1, y1, sch.B1, sch.inv_var1)) *
                         (1.0 - bridge_prob(x2, y2, sch.B2, sch.inv_var2));
                    if (w < 1e-300) {
                        w = 0.0;
                        break;
                    }
                }
                x1 = y1;
                x2 = y2;
            }
            value += w;
        }
        acc.add(value / reps);
    }
    return acc.finish(mc.paths);
}

namespace {

struct PathDefaults {
    double tau1, tau2;   // midpoint default times; +inf if no default by T
    bool tie;            // both crossed in the same step
    bool tie_firm1_first;  // tie-break draw, firm one ordered first
};

// Simulates both firms to the horizon, sampling bridge crossings. Stops as
// soon as the information needed (per need_both) is complete.
PathDefaults simulate_defaults(const StepScheme& sch, rng::Philox& gen, bool bridge,
                               bool need_both, double sign) {
    const double inf = std::numeric_limits<double>::infinity();
    PathDefaults out{inf, inf, false, false};
    double x1 = 0.0, x2 = 0.0;
    bool alive1 = sch.B1 < 0.0, alive2 = sch.B2 < 0.0;
    if (!alive1) out.tau1 = 0.0;
    if (!alive2) out.tau2 = 0.0;
    for (int k = 0; k < sch.n_steps; ++k) {
        if (!alive1 && !alive2) break;
        if (!need_both && (!alive1 || !alive2)) break;
        double z1, z2;
        gen.next_normal_pair(z1, z2);
        z1 *= sign;
        z2 *= sign;
        double w2 = sch.rho * z1 + sch.rho_c * z2;
        double y1 = x1 + sch.a1dt + sch.s1rt * z1;
        double y2 = x2 + sch.a2dt + sch.s2rt * w2;
        double t_mid = (k + 0.5) * sch.dt;
        bool hit1 = false, hit2 = false;
        if (alive1) {
            hit1 = y1 <= sch.B1 ||
                   (bridge && gen.next_uniform() <= bridge_prob(x1, y1, sch.B1, sch.inv_var1));
        }
        if (alive2) {
            hit2 = y2 <= sch.B2 ||
                   (bridge && gen.next_uniform() <= bridge_prob(x2, y2, sch.B2, sch.inv_var2));
        }
        if (hit1) {
            alive1 = false;
            out.tau1 = t_mid;
        }
        if (hit2) {
            alive2 = false;
            out.tau2 = t_mid;
        }
        if (hit1 && hit2) {
            out.tie = true;
            out.tie_firm1_first = gen.next_uniform() < 0.5;
        }
        x1 = y1;
        x2 = y2;
    }
    return out;
}

}  // namespace

McEstimate estimate_bond_price(const PairModel& model, const bond::BondContract& bond,
                               const McConfig& mc) {
    model.validate();
    bond.validate();
    mc.validate();
    const double T = bond.maturity;
    if (std::abs(T - model.horizon) > 1e-12)
        throw std::invalid_argument("bond maturity must equal the model horizon");

    StepScheme sch(model, T, mc.steps_per_year);
    const double K = bond.face, omega = bond.writedown;
    const double disc = std::exp(-model.rf * T);
    const double default_payoff = omega * K * disc;

    if (sch.B1 == 0.0 || sch.B2 == 0.0) return {default_payoff, 0.0, mc.paths};

    Moments acc;
    for (std::int64_t p = 0; p < mc.paths; ++p) {
        double value = 0.0;
        int reps = mc.antithetic ? 2 : 1;
        for (int rep = 0; rep < reps; ++rep) {
            rng::Philox gen(mc.seed, static_cast<std::uint64_t>(p));
            double sign = rep == 0 ? 1.0 : -1.0;
            double x1 = 0.0, x2 = 0.0;
            bool defaulted = false;
            for (int k = 0; k < sch.n_steps; ++k) {
                double z1, z2;
                gen.next_normal_pair(z1, z2);
                z1 *= sign;
                z2 *= sign;
                double w2 = sch.rho * z1 + sch.rho_c * z2;
                double y1 = x1 + sch.a1dt + sch.s1rt * z1;
                double y2 = x2 + sch.a2dt + sch.s2rt * w2;
                bool hit = y1 <= sch.B1 || y2 <= sch.B2;
                if (!hit && mc.bridge) {
                    hit = gen.next_uniform() <= bridge_prob(x1, y1, sch.B1, sch.inv_var1) ||
                          gen.next_uniform() <= bridge_prob(x2, y2, sch.B2, sch.inv_var2);
                }
                if (hit) {
                    defaulted = true;
                    break;
                }
                x1 = y1;
                x2 = y2;
            }
            double v1T = model.firm1.v0 * std::exp(x1 + model.firm1.gamma * T);
            value += defaulted ? default_payoff : disc * std::min(omega * v1T, K);
        }
        acc.add(value / reps);
    }
    return acc.finish(mc.paths);
}

namespace {

// Ratio estimate protection/premium with first-order error propagation.
CdsLegsEstimate finish_legs(PairMoments& acc, std::int64_t n) {
    CdsLegsEstimate out;
    double cross_mean = acc.finish_cross(n);
    out.premium = acc.a.finish(n);
    out.protection = acc.b.finish(n);

    double A = out.protection.mean, B = out.premium.mean;
    double varA = out.protection.std_error * out.protection.std_error;
    double varB = out.premium.std_error * out.premium.std_error;
    double covAB = (cross_mean - A * B) / n;
    double c = B != 0.0 ? A / B : 0.0;
    double var_c = B != 0.0
                       ? std::max(0.0, varA / (B * B) - 2.0 * A / (B * B * B) * covAB +
                                           A * A / (B * B * B * B) * varB)
                       : 0.0;
    out.spread = {c, std::sqrt(var_c), n};
    return out;
}

}  // namespace

BasketLegsEstimate estimate_basket_cds_legs(const PairModel& model, double notional,
                                            double recovery, const McConfig& mc) {
    model.validate();
    mc.validate();
    if (notional <= 0.0) throw std::invalid_argument("cds: notional must be > 0");
    if (recovery < 0.0 || recovery > 1.0)
        throw std::invalid_argument("cds: recovery must lie in [0, 1]");

    const double T = model.horizon;
    StepScheme sch(model, T, mc.steps_per_year);
    const double K = notional, R = recovery, rf = model.rf;
    const double inf = std::numeric_limits<double>::infinity();

    auto annuity = [&](double upto) {
        return rf != 0.0 ? (1.0 - std::exp(-rf * upto)) / rf : upto;
    };
    auto protection = [&](double tau) {
        return tau <= T ? (1.0 - R) * K * std::exp(-rf * tau) : 0.0;
    };

    PairMoments acc_first, acc_second, acc_cp;
    Moments acc_cp2;
    for (std::int64_t p = 0; p < mc.paths; ++p) {
        double prem_f = 0.0, prot_f = 0.0, prem_s = 0.0, prot_s = 0.0;
        double prot_cp1 = 0.0, prot_cp2 = 0.0;
        int reps = mc.antithetic ? 2 : 1;
        for (int rep = 0; rep < reps; ++rep) {
            rng::Philox gen(mc.seed, static_cast<std::uint64_t>(p));
            PathDefaults pd =
                simulate_defaults(sch, gen, mc.bridge, true, rep == 0 ? 1.0 : -1.0);
            double tau_f = std::min(pd.tau1, pd.tau2);
            double tau_s = std::max(pd.tau1, pd.tau2);
            bool ref1_first = pd.tie ? pd.tie_firm1_first : pd.tau1 < pd.tau2;
            prem_f += K * annuity(std::min(tau_f, T));
            prot_f += protection(tau_f);
            prem_s += K * annuity(std::min(tau_s, T));
            prot_s += protection(tau_s);
            prot_cp1 += protection(ref1_first ? pd.tau1 : inf);
            prot_cp2 += protection(ref1_first ? inf : pd.tau2);
        }
        acc_first.add(prem_f / reps, prot_f / reps);
        acc_second.add(prem_s / reps, prot_s / reps);
        acc_cp.add(prem_f / reps, prot_cp1 / reps);
        acc_cp2.add(prot_cp2 / reps);
    }

    BasketLegsEstimate out;
    out.first = finish_legs(acc_first, mc.paths);
    out.second = finish_legs(acc_second, mc.paths);
    out.counterparty = finish_legs(acc_cp, mc.paths);
    out.protection_ref1 = out.counterparty.protection;
    out.protection_ref2 = acc_cp2.finish(mc.paths);
    out.protection_first = out.first.protection;
    return out;
}

CdsLegsEstimate estimate_cds_legs(const PairModel& model, const cds::CdsContract& cds,
                                  const McConfig& mc) {
    model.validate();
    cds.validate();
    mc.validate();
    const double T = cds.maturity;
    if (std::abs(T - model.horizon) > 1e-12)
        throw std::invalid_argument("cds maturity must equal the model horizon");

    StepScheme sch(model, T, mc.steps_per_year);
    const double K = cds.notional, R = cds.recovery, rf = model.rf;
    const bool need_both = cds.flavor == cds::Flavor::second;
    const double inf = std::numeric_limits<double>::infinity();

    auto annuity = [&](double upto) {
        return rf != 0.0 ? (1.0 - std::exp(-rf * upto)) / rf : upto;
    };

    PairMoments acc;
    for (std::int64_t p = 0; p < mc.paths; ++p) {
        double prem = 0.0, prot = 0.0;
        int reps = mc.antithetic ? 2 : 1;
        for (int rep = 0; rep < reps; ++rep) {
            rng::Philox gen(mc.seed, static_cast<std::uint64_t>(p));
            PathDefaults pd = simulate_defaults(sch, gen, mc.bridge, need_both,
                                                rep == 0 ? 1.0 : -1.0);
            double tau_event = inf, premium_end = T;
            switch (cds.flavor) {
                case cds::Flavor::first:
                case cds::Flavor::second_contagion:
                    tau_event = std::min(pd.tau1, pd.tau2);
                    premium_end = std::min(tau_event, T);
                    break;
                case cds::Flavor::second:
                    tau_event = std::max(pd.tau1, pd.tau2);
                    premium_end = std::min(tau_event, T);
                    break;
                case cds::Flavor::counterparty_homogeneous: {
                    premium_end = std::min({pd.tau1, pd.tau2, T});
                    bool ref_first = pd.tie ? pd.tie_firm1_first : pd.tau1 < pd.tau2;
                    if (ref_first && pd.tau1 <= T) tau_event = pd.tau1;
                    break;
                }
            }
            prem += K * annuity(premium_end);
            prot += tau_event <= T ? (1.0 - R) * K * std::exp(-rf * tau_event) : 0.0;
        }
        acc.add(prem / reps, prot / reps);
    }

    return finish_legs(acc, mc.paths);
}

}  // namespace contagion::mc
