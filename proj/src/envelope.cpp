#include "riskmdp/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "riskmdp/errors.hpp"
#include "riskmdp/risk_measures.hpp"

namespace riskmdp {

namespace {

constexpr double kFeasTol = 1e-10;

EnvelopeSup sup_expectation(const DiscreteDistribution& dist) {
    EnvelopeDensity phi{std::vector<double>(dist.size(), 1.0), dist.probs};
    return EnvelopeSup{expectation(dist), std::move(phi)};
}

EnvelopeSup sup_cvar(const DiscreteDistribution& dist, double lambda) {
    if (!(lambda >= 0.0) || lambda >= 1.0)
        throw DomainError("cvar level must lie in [0,1), got " + std::to_string(lambda));
    const double cap = 1.0 / (1.0 - lambda);
    std::vector<std::size_t> idx(dist.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (dist.atoms[a] != dist.atoms[b]) return dist.atoms[a] > dist.atoms[b];
        return a < b;
    });
    std::vector<double> phi(dist.size(), 0.0);
    double budget = 1.0;
    double value = 0.0;
    for (std::size_t k : idx) {
        if (dist.probs[k] <= 0.0) continue;
        const double mass = std::min(cap * dist.probs[k], budget);
        phi[k] = mass / dist.probs[k];
        value += phi[k] * dist.probs[k] * dist.atoms[k];
        budget -= mass;
        if (budget <= 0.0) break;
    }
    return EnvelopeSup{value, EnvelopeDensity{std::move(phi), dist.probs}};
}

// Closed form from convex duality for the p = 1 upper semideviation:
// phi = 1 + zeta - E[zeta], zeta_i = lambda * 1{x_i > E[X]} maximizes <X, phi>.
EnvelopeSup sup_semideviation(const DiscreteDistribution& dist, double lambda) {
    if (!(lambda >= 0.0) || lambda > 1.0)
        throw DomainError("semideviation lambda must lie in [0,1], got " + std::to_string(lambda));
    const double mean = expectation(dist);
    std::vector<double> zeta(dist.size(), 0.0);
    double zeta_mean = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist.atoms[i] > mean) zeta[i] = lambda;
        zeta_mean += zeta[i] * dist.probs[i];
    }
    std::vector<double> phi(dist.size());
    double value = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        phi[i] = 1.0 + zeta[i] - zeta_mean;
        value += phi[i] * dist.probs[i] * dist.atoms[i];
    }
    return EnvelopeSup{value, EnvelopeDensity{std::move(phi), dist.probs}};
}

} // namespace

EnvelopeSup envelope_sup(const EnvelopeSpec& env, const DiscreteDistribution& dist) {
    dist.check_valid();
    switch (env.kind) {
    case RiskKind::Expectation: return sup_expectation(dist);
    case RiskKind::Cvar: return sup_cvar(dist, env.lambda);
    case RiskKind::MeanUpperSemideviation: return sup_semideviation(dist, env.lambda);
    default:
        throw UnsupportedEnvelopeError("no explicit envelope for " + to_string(env.kind) +
                                       "; evaluate the direct formula instead");
    }
}

FeasibilityResult envelope_feasible(const EnvelopeSpec& env, const DiscreteDistribution& dist,
                                    const EnvelopeDensity& density) {
    dist.check_valid();
    const auto& phi = density.phi;
    if (phi.size() != dist.size())
        return {false, "phi has " + std::to_string(phi.size()) + " entries, expected " +
                           std::to_string(dist.size())};

    for (std::size_t i = 0; i < phi.size(); ++i)
        if (phi[i] < -kFeasTol)
            return {false, "phi[" + std::to_string(i) + "] = " + std::to_string(phi[i]) + " < 0"};

    double budget = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) budget += phi[i] * dist.probs[i];
    if (std::abs(budget - 1.0) > kFeasTol)
        return {false, "sum phi_i p_i = " + std::to_string(budget) + ", expected 1"};

    switch (env.kind) {
    case RiskKind::Expectation:
        for (std::size_t i = 0; i < phi.size(); ++i)
            if (dist.probs[i] > 0.0 && std::abs(phi[i] - 1.0) > kFeasTol)
                return {false, "expectation envelope is the singleton phi == 1; phi[" +
                                   std::to_string(i) + "] = " + std::to_string(phi[i])};
        return {true, ""};
    case RiskKind::Cvar: {
        const double cap = 1.0 / (1.0 - env.lambda);
        for (std::size_t i = 0; i < phi.size(); ++i)
            if (phi[i] > cap + kFeasTol)
                return {false, "phi[" + std::to_string(i) + "] = " + std::to_string(phi[i]) +
                                   " exceeds 1/(1-lambda) = " + std::to_string(cap)};
        return {true, ""};
    }
    case RiskKind::MeanUpperSemideviation: {
        // phi = 1 + zeta - E[zeta] for some zeta in [0, lambda]^n. Writing
        // e = E[zeta], feasibility needs an e with 1 - phi_i <= e <= lambda + 1 - phi_i
        // for all i and e in [0, lambda].
        double lo = 0.0, hi = env.lambda;
        for (std::size_t i = 0; i < phi.size(); ++i) {
            lo = std::max(lo, 1.0 - phi[i]);
            hi = std::min(hi, env.lambda + 1.0 - phi[i]);
        }
        if (lo > hi + kFeasTol)
            return {false, "no zeta in [0,lambda]^n reproduces phi (gap " +
                               std::to_string(lo - hi) + ")"};
        return {true, ""};
    }
    default:
        throw UnsupportedEnvelopeError("no explicit envelope for " + to_string(env.kind));
    }
}

double risk_transition(const RiskSpec& spec, const std::vector<double>& theta,
                       const std::vector<double>& v, const std::vector<double>& q_row) {
    if (v.size() != q_row.size())
        throw ModelError("value table has " + std::to_string(v.size()) +
                         " states but kernel row has " + std::to_string(q_row.size()));
    double total = 0.0;
    for (double p : q_row) {
        if (p < 0.0) throw ModelError("kernel row has a negative entry");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw ModelError("kernel row sums to " + std::to_string(total) + ", expected 1");
    // Renormalize away the residual rounding so the pushforward passes the
    // distribution's stricter 1e-12 budget.
    std::vector<double> probs(q_row);
    for (double& p : probs) p /= total;
    return evaluate(spec, theta, DiscreteDistribution(v, std::move(probs)));
}

} // namespace riskmdp
