#include "riskmdp/axioms.hpp"

#include <algorithm>
#include <cmath>

#include "riskmdp/rng.hpp"

namespace riskmdp {

std::string to_string(Axiom axiom) {
    switch (axiom) {
    case Axiom::Monotonicity: return "monotonicity";
    case Axiom::Convexity: return "convexity";
    case Axiom::TranslationEquivalence: return "translation_equivalence";
    case Axiom::PositiveHomogeneity: return "positive_homogeneity";
    }
    return "?";
}

bool AxiomReport::all_pass() const {
    for (const auto& r : results)
        if (r.passes != trials) return false;
    return true;
}

AxiomReport check_coherence_axioms(const RiskSpec& spec, const std::vector<double>& theta,
                                   int trials, std::uint64_t seed, double tolerance,
                                   std::size_t space_size) {
    Rng rng(seed);
    AxiomReport report;
    report.trials = trials;
    report.tolerance = tolerance;

    auto record = [&](Axiom axiom, double violation) {
        auto& r = report.results[static_cast<int>(axiom)];
        if (violation <= tolerance) r.passes += 1;
        r.worst_violation = std::max(r.worst_violation, violation);
    };

    for (int t = 0; t < trials; ++t) {
        // Shared sample space: one probability vector, several atom vectors,
        // so pointwise operations on atoms are meaningful.
        const std::vector<double> probs = rng.simplex(space_size);
        std::vector<double> x(space_size), y(space_size);
        for (auto& v : x) v = rng.uniform(0.0, 10.0);
        for (auto& v : y) v = rng.uniform(0.0, 10.0);

        auto rho = [&](const std::vector<double>& atoms) {
            return evaluate(spec, theta, DiscreteDistribution(atoms, probs));
        };

        const double rho_x = rho(x);

        // (i) monotonicity: y' = x + nonnegative noise dominates x pointwise
        {
            std::vector<double> upper(x);
            for (auto& v : upper) v += rng.uniform(0.0, 5.0);
            record(Axiom::Monotonicity, std::max(0.0, rho_x - rho(upper)));
        }

        // (ii) convexity of the mixture on the shared space
        {
            const double alpha = rng.uniform01();
            std::vector<double> mix(space_size);
            for (std::size_t i = 0; i < space_size; ++i)
                mix[i] = alpha * x[i] + (1.0 - alpha) * y[i];
            const double lhs = rho(mix);
            const double rhs = alpha * rho_x + (1.0 - alpha) * rho(y);
            record(Axiom::Convexity, std::max(0.0, lhs - rhs));
        }

        // (iii) translation equivalence: rho(X + a) = rho(X) + a
        {
            const double alpha = rng.uniform(-5.0, 5.0);
            std::vector<double> shifted(x);
            for (auto& v : shifted) v += alpha;
            const double shift = rho(shifted) - rho_x;
            record(Axiom::TranslationEquivalence, std::abs(shift - alpha));
            if (std::abs(shift) > std::abs(report.worst_translation_shift)) {
                report.worst_translation_shift = shift;
                report.alpha_at_worst_shift = alpha;
            }
        }

        // (iv) positive homogeneity: rho(aX) = a rho(X), a > 0
        {
            const double a = rng.uniform(0.1, 3.0);
            std::vector<double> scaled(x);
            for (auto& v : scaled) v *= a;
            record(Axiom::PositiveHomogeneity, std::abs(rho(scaled) - a * rho_x));
        }
    }
    return report;
}

} // namespace riskmdp
