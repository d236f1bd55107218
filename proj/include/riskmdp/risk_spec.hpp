#pragma once

#include <string>
#include <vector>

#include "riskmdp/affine.hpp"
#include "riskmdp/distribution.hpp"

namespace riskmdp {

enum class RiskKind {
    Expectation,
    Cvar,
    MeanDeviation,
    MeanUpperSemideviation,
    WorstLoss,
    EntropicCeHomogenized,
};

std::string to_string(RiskKind kind);
RiskKind risk_kind_from_string(const std::string& name);

/// Closed/half-open interval of admissible risk-aversion levels.
struct Interval {
    double lo;
    double hi;          ///< +infinity encoded as HUGE_VAL
    bool hi_open;       ///< true when the upper end is excluded (cvar's [0,1))

    bool contains(double x) const;
    std::string describe() const;
};

/// Which coherent risk measure to use, with its parametric aversion map.
///
/// lambda_map sends theta in [0,1]^d to the risk level; being affine, its
/// range over the box is decided at the extreme vertices.
struct RiskSpec {
    RiskKind kind = RiskKind::Expectation;
    double p = 1.0;          ///< deviation order, used by the two deviation kinds
    AffineMap lambda_map;    ///< theta -> lambda(theta)

    double lambda_at(const std::vector<double>& theta) const { return lambda_map(theta); }

    /// Admissible lambda interval for this kind (and order p).
    Interval admissible_range() const;

    /// True iff lambda([0,1]^d) stays inside the admissible interval.
    bool lambda_admissible_on_box() const;

    static RiskSpec expectation(std::size_t dim = 0) {
        return RiskSpec{RiskKind::Expectation, 1.0, AffineMap::constant(0.0, dim)};
    }
    static RiskSpec constant_lambda(RiskKind kind, double lambda, double p = 1.0,
                                    std::size_t dim = 0) {
        return RiskSpec{kind, p, AffineMap::constant(lambda, dim)};
    }
};

/// rho_theta(X): dispatch to the measure selected by the spec.
///
/// Throws RejectedParameterError (naming the admissible interval) when
/// lambda(theta) falls outside the range of the chosen kind.
double evaluate(const RiskSpec& spec, const std::vector<double>& theta,
                const DiscreteDistribution& dist);

} // namespace riskmdp
