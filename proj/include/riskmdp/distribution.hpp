#pragma once

#include <cstddef>
#include <vector>

#include "riskmdp/errors.hpp"

namespace riskmdp {

/// Finite distribution of a real-valued cost: atoms with probabilities.
///
/// The carrier for every risk-measure evaluation. Probabilities must be
/// nonnegative and sum to 1 within 1e-12; zero-probability atoms are legal
/// but invisible to essential-infimum/supremum logic.
struct DiscreteDistribution {
    std::vector<double> atoms;
    std::vector<double> probs;

    DiscreteDistribution() = default;
    DiscreteDistribution(std::vector<double> a, std::vector<double> p)
        : atoms(std::move(a)), probs(std::move(p)) {
        check_valid();
    }

    std::size_t size() const { return atoms.size(); }

    /// Throws DomainError if the invariants fail.
    void check_valid() const;
};

/// E[X], the plain probability-weighted mean.
double expectation(const DiscreteDistribution& dist);

/// Smallest atom carrying positive probability.
double essential_infimum(const DiscreteDistribution& dist);

/// Largest atom carrying positive probability.
double essential_supremum(const DiscreteDistribution& dist);

} // namespace riskmdp
