#pragma once

#include "riskmdp/distribution.hpp"

namespace riskmdp {

/// Left-continuous quantile inf{x : P(X <= x) >= u} for u in [0,1).
///
/// Computed on the sorted positive-probability atoms; u = 0 returns the
/// essential infimum.
double var_quantile(const DiscreteDistribution& dist, double u);

/// CVaR at level lambda in [0,1): the exact tail integral
/// (1/(1-lambda)) * integral_lambda^1 of the quantile.
///
/// Sorts atoms descending and averages the top 1-lambda probability mass,
/// weighting the straddling atom fractionally, so the discrete integral is
/// exact rather than a staircase approximation.
double cvar(const DiscreteDistribution& dist, double lambda);

/// CVaR via the minimization min_t { t + E[(X-t)_+]/(1-lambda) }.
///
/// The objective is convex piecewise-linear with kinks at the atoms, so the
/// exact minimum is found by scanning atom values. Used as a cross-check
/// against the tail integral; the two agree to 1e-9 on valid inputs.
double cvar_rockafellar_uryasev(const DiscreteDistribution& dist, double lambda);

/// E[X] + lambda * ||X - E[X]||_p for p >= 1, lambda >= 0.
double mean_deviation(const DiscreteDistribution& dist, double lambda, double p);

/// E[X] + lambda * ||(X - E[X])_+||_p for p >= 1, lambda in [0,1].
double mean_upper_semideviation(const DiscreteDistribution& dist, double lambda, double p);

/// E[X] + lambda * ess inf X for lambda >= 0.
///
/// Not coherent for lambda > 0: shifting X by alpha moves the value by
/// (1+lambda)*alpha and mixtures can beat the convexity inequality. Kept in
/// this literal form; the axiom checker surfaces the violations.
double worst_loss(const DiscreteDistribution& dist, double lambda);

/// (tau/lambda) * log E[exp(lambda X / tau)], evaluated with a max shift
/// inside the log-sum-exp. lambda > 0, tau > 0.
double entropic_g(const DiscreteDistribution& dist, double lambda, double tau);

struct HomogenizedCe {
    double value;
    double tau; ///< bracket location of the minimum, observable because the
                ///< infimum drifts toward tau -> infinity (value -> E[X])
};

/// inf over tau > 0 of entropic_g, on a log-spaced bracket refined by
/// golden-section search.
HomogenizedCe homogenized_ce_detail(const DiscreteDistribution& dist, double lambda);

/// Value-only variant of homogenized_ce_detail.
double homogenized_ce(const DiscreteDistribution& dist, double lambda);

} // namespace riskmdp
