#pragma once

#include <string>
#include <vector>

#include "riskmdp/risk_spec.hpp"

namespace riskmdp {

/// Density phi of a tilted measure w.r.t. the base probabilities:
/// phi >= 0 componentwise and sum phi_i * base_probs_i = 1 (within 1e-10).
struct EnvelopeDensity {
    std::vector<double> phi;
    std::vector<double> base_probs;
};

/// Risk kinds whose envelope has an explicit finite description here:
/// expectation (the singleton phi == 1), cvar (box-plus-budget), and
/// mean_upper_semideviation with p = 1.
struct EnvelopeSpec {
    RiskKind kind = RiskKind::Expectation;
    double lambda = 0.0;
};

struct EnvelopeSup {
    double value;
    EnvelopeDensity argmax;
};

/// sup over the envelope of <X, phi>, with the maximizing density.
///
/// cvar solves its box-plus-budget program greedily: atoms sorted
/// descending receive density 1/(1-lambda) until the unit probability
/// budget runs out, fractionally on the boundary atom, zero after. The
/// value equals cvar(dist, lambda) to 1e-9. The p=1 semideviation uses the
/// textbook duality density phi = 1 + zeta - E[zeta] with
/// zeta_i = lambda * 1{atom_i > E[X]} (plumbing, not a contribution of this
/// library's core recursion). Unsupported kinds throw
/// UnsupportedEnvelopeError directing the caller to the direct formula.
EnvelopeSup envelope_sup(const EnvelopeSpec& env, const DiscreteDistribution& dist);

struct FeasibilityResult {
    bool feasible;
    std::string diagnostic; ///< names the first violated constraint; empty when feasible
};

/// Membership test for the explicit envelopes, tolerance 1e-10.
FeasibilityResult envelope_feasible(const EnvelopeSpec& env, const DiscreteDistribution& dist,
                                    const EnvelopeDensity& phi);

/// One-step risk transition: rho_theta applied to the pushforward of the
/// next-state values under a kernel row.
///
/// Builds DiscreteDistribution{atoms = v, probs = q_row} and evaluates the
/// spec; the mapping the dynamic-programming backup composes with the
/// stage cost. Throws ModelError when q_row is not a probability vector.
double risk_transition(const RiskSpec& spec, const std::vector<double>& theta,
                       const std::vector<double>& v, const std::vector<double>& q_row);

} // namespace riskmdp
