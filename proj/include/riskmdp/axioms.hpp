#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "riskmdp/risk_spec.hpp"

namespace riskmdp {

enum class Axiom : int {
    Monotonicity = 0,
    Convexity = 1,
    TranslationEquivalence = 2,
    PositiveHomogeneity = 3,
};

std::string to_string(Axiom axiom);

/// Outcome of randomized trials of the four coherence axioms.
struct AxiomResult {
    int passes = 0;             ///< trials with violation <= tolerance
    double worst_violation = 0; ///< max over trials; 0 means the axiom held exactly
};

struct AxiomReport {
    int trials = 0;
    double tolerance = 0.0;
    std::array<AxiomResult, 4> results;

    /// Largest observed |rho(X+alpha) - rho(X)| across translation trials,
    /// with the alpha that produced it. For worst_loss the shift works out
    /// to (1+lambda)*alpha instead of alpha.
    double worst_translation_shift = 0.0;
    double alpha_at_worst_shift = 0.0;

    const AxiomResult& result(Axiom a) const { return results[static_cast<int>(a)]; }
    bool all_pass() const;
};

/// Randomized coherence audit of a risk spec at a fixed parameter point.
///
/// Each trial draws a fresh 8-atom sample space with a shared positive
/// probability vector; axiom pairs are built pointwise on the shared space
/// (monotone pairs by adding nonnegative noise, mixtures by combining atom
/// vectors), both sides evaluated, and the violation magnitude recorded.
/// Violations are report content, never errors.
AxiomReport check_coherence_axioms(const RiskSpec& spec, const std::vector<double>& theta,
                                   int trials, std::uint64_t seed, double tolerance = 1e-9,
                                   std::size_t space_size = 8);

} // namespace riskmdp
