#pragma once

#include "contagion/model.hpp"

namespace contagion::survival {

// Derived wedge symbols (a1, a2, b, beta, r0, theta0) for the pair model.
// Throws degenerate_model_error when both firms start on their barriers.
PolarTransform polar_transform(const PairModel& model);

// Joint probability that neither firm's log-value minimum reaches its
// barrier on [0, t]: the eigenfunction series over the wedge, clamped to
// [0, 1]. Throws convergence_error if the series cap is hit with terms
// still above tolerance.
double joint_survival(const PairModel& model, double t, const NumericsConfig& cfg);

// Single-sum odd-term Bessel form valid when both drift adjustments vanish,
// alpha_1 = alpha_2 = 0 (barrier growth equal to the firm-value drift).
// Rejects models violating that precondition.
double joint_survival_zero_drift(const PairModel& model, double t, const NumericsConfig& cfg);

// Single-barrier first-passage survival for one drifted Brownian firm:
// Phi((-B + a t)/(s sqrt(t))) - e^{2 a B / s^2} Phi((B + a t)/(s sqrt(t))).
// horizon anchors the barrier, t is the survival horizon (t <= horizon in
// all pricing uses).
double marginal_survival(const FirmParams& firm, double rf, double horizon, double t);

// Same law in raw (B, alpha, sigma) coordinates.
double marginal_survival_raw(double B, double alpha, double sigma, double t);

// Restricted exponential moment over the surviving mass,
//   int_{B2}^{inf} int_{lowerA}^{upperB} e^{epsilon x1} p(x1, x2, t) dx1 dx2,
// with p the joint survival transition density. lowerA >= B1; upperB may be
// +inf. With epsilon = 0, lowerA = B1, upperB = inf this reduces to the
// joint survival probability.
double restricted_exp_moment(const PairModel& model, double t, double epsilon,
                             double lowerA, double upperB, const NumericsConfig& cfg);

}  // namespace contagion::survival
