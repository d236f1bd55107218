#include "riskmdp/distribution.hpp"

#include <cmath>
#include <string>

namespace riskmdp {

void DiscreteDistribution::check_valid() const {
    if (atoms.empty() || atoms.size() != probs.size())
        throw DomainError("distribution needs equal nonzero atom/prob counts, got " +
                          std::to_string(atoms.size()) + "/" + std::to_string(probs.size()));
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] >= 0.0))
            throw DomainError("negative probability at atom " + std::to_string(i));
        if (!std::isfinite(atoms[i]))
            throw DomainError("non-finite atom at index " + std::to_string(i));
        total += probs[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw DomainError("probabilities sum to " + std::to_string(total) + ", expected 1");
}

double expectation(const DiscreteDistribution& dist) {
    double e = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) e += dist.atoms[i] * dist.probs[i];
    return e;
}

double essential_infimum(const DiscreteDistribution& dist) {
    bool seen = false;
    double lo = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist.probs[i] <= 0.0) continue;
        if (!seen || dist.atoms[i] < lo) lo = dist.atoms[i];
        seen = true;
    }
    if (!seen) throw DomainError("distribution has no positive-probability atom");
    return lo;
}

double essential_supremum(const DiscreteDistribution& dist) {
    bool seen = false;
    double hi = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist.probs[i] <= 0.0) continue;
        if (!seen || dist.atoms[i] > hi) hi = dist.atoms[i];
        seen = true;
    }
    if (!seen) throw DomainError("distribution has no positive-probability atom");
    return hi;
}

} // namespace riskmdp
