#include "riskmdp/risk_spec.hpp"

#include <cmath>
#include <sstream>

#include "riskmdp/errors.hpp"
#include "riskmdp/risk_measures.hpp"

namespace riskmdp {

std::string to_string(RiskKind kind) {
    switch (kind) {
    case RiskKind::Expectation: return "expectation";
    case RiskKind::Cvar: return "cvar";
    case RiskKind::MeanDeviation: return "mean_deviation";
    case RiskKind::MeanUpperSemideviation: return "mean_upper_semideviation";
    case RiskKind::WorstLoss: return "worst_loss";
    case RiskKind::EntropicCeHomogenized: return "entropic_ce_homogenized";
    }
    return "?";
}

RiskKind risk_kind_from_string(const std::string& name) {
    if (name == "expectation") return RiskKind::Expectation;
    if (name == "cvar") return RiskKind::Cvar;
    if (name == "mean_deviation") return RiskKind::MeanDeviation;
    if (name == "mean_upper_semideviation") return RiskKind::MeanUpperSemideviation;
    if (name == "worst_loss") return RiskKind::WorstLoss;
    if (name == "entropic_ce_homogenized") return RiskKind::EntropicCeHomogenized;
    throw DomainError("unknown risk kind '" + name + "'");
}

bool Interval::contains(double x) const {
    if (x < lo) return false;
    return hi_open ? x < hi : x <= hi;
}

std::string Interval::describe() const {
    std::ostringstream os;
    os << "[" << lo << ", ";
    if (std::isinf(hi))
        os << "inf)";
    else
        os << hi << (hi_open ? ")" : "]");
    return os.str();
}

Interval RiskSpec::admissible_range() const {
    switch (kind) {
    case RiskKind::Expectation: return Interval{0.0, HUGE_VAL, true};
    case RiskKind::Cvar: return Interval{0.0, 1.0, true};
    case RiskKind::MeanDeviation:
        // coherent only at p = 1 with lambda <= 1/2; higher orders accept any
        // nonnegative lambda with no coherence claim
        return p == 1.0 ? Interval{0.0, 0.5, false} : Interval{0.0, HUGE_VAL, true};
    case RiskKind::MeanUpperSemideviation: return Interval{0.0, 1.0, false};
    case RiskKind::WorstLoss: return Interval{0.0, HUGE_VAL, true};
    case RiskKind::EntropicCeHomogenized: return Interval{0.0, HUGE_VAL, true};
    }
    return Interval{0.0, HUGE_VAL, true};
}

bool RiskSpec::lambda_admissible_on_box() const {
    const Interval range = admissible_range();
    return range.contains(lambda_map.min_on_box()) && range.contains(lambda_map.max_on_box());
}

double evaluate(const RiskSpec& spec, const std::vector<double>& theta,
                const DiscreteDistribution& dist) {
    const double lambda = spec.lambda_at(theta);
    const Interval range = spec.admissible_range();
    if (!range.contains(lambda))
        throw RejectedParameterError("lambda(theta) = " + std::to_string(lambda) +
                                         " outside admissible " + range.describe() + " for " +
                                         to_string(spec.kind),
                                     range.lo, range.hi);
    switch (spec.kind) {
    case RiskKind::Expectation: dist.check_valid(); return expectation(dist);
    case RiskKind::Cvar: return cvar(dist, lambda);
    case RiskKind::MeanDeviation: return mean_deviation(dist, lambda, spec.p);
    case RiskKind::MeanUpperSemideviation: return mean_upper_semideviation(dist, lambda, spec.p);
    case RiskKind::WorstLoss: return worst_loss(dist, lambda);
    case RiskKind::EntropicCeHomogenized:
        // lambda = 0 is the log-mean-exp limit: the plain mean
        if (lambda == 0.0) {
            dist.check_valid();
            return expectation(dist);
        }
        return homogenized_ce(dist, lambda);
    }
    throw DomainError("unhandled risk kind");
}

} // namespace riskmdp
