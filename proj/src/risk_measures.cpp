#include "riskmdp/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace riskmdp {

namespace {

// Atom indices ordered by value; zero-probability atoms dropped.
std::vector<std::size_t> support_sorted(const DiscreteDistribution& dist, bool descending) {
    std::vector<std::size_t> idx;
    idx.reserve(dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist.probs[i] > 0.0) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (dist.atoms[a] != dist.atoms[b])
            return descending ? dist.atoms[a] > dist.atoms[b] : dist.atoms[a] < dist.atoms[b];
        return a < b;
    });
    return idx;
}

} // namespace

double var_quantile(const DiscreteDistribution& dist, double u) {
    dist.check_valid();
    if (!(u >= 0.0) || u >= 1.0)
        throw DomainError("quantile level must lie in [0,1), got " + std::to_string(u));
    const auto idx = support_sorted(dist, /*descending=*/false);
    double cum = 0.0;
    for (std::size_t k : idx) {
        cum += dist.probs[k];
        // 1e-12 slack keeps accumulated rounding from skipping an exact CDF step
        if (cum >= u - 1e-12) return dist.atoms[k];
    }
    return dist.atoms[idx.back()];
}

double cvar(const DiscreteDistribution& dist, double lambda) {
    dist.check_valid();
    if (!(lambda >= 0.0) || lambda >= 1.0)
        throw DomainError("cvar level must lie in [0,1), got " + std::to_string(lambda));
    const auto idx = support_sorted(dist, /*descending=*/true);
    double need = 1.0 - lambda;
    double acc = 0.0;
    for (std::size_t k : idx) {
        const double take = std::min(dist.probs[k], need);
        acc += take * dist.atoms[k];
        need -= take;
        if (need <= 0.0) break;
    }
    return acc / (1.0 - lambda);
}

double cvar_rockafellar_uryasev(const DiscreteDistribution& dist, double lambda) {
    dist.check_valid();
    if (!(lambda >= 0.0) || lambda >= 1.0)
        throw DomainError("cvar level must lie in [0,1), got " + std::to_string(lambda));
    // t + E[(X-t)+]/(1-lambda) is convex piecewise linear; kinks only at atoms.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist.probs[i] <= 0.0) continue;
        const double t = dist.atoms[i];
        double tail = 0.0;
        for (std::size_t j = 0; j < dist.size(); ++j)
            if (dist.atoms[j] > t) tail += dist.probs[j] * (dist.atoms[j] - t);
        best = std::min(best, t + tail / (1.0 - lambda));
    }
    return best;
}

double mean_deviation(const DiscreteDistribution& dist, double lambda, double p) {
    dist.check_valid();
    if (!(p >= 1.0)) throw DomainError("deviation order must be >= 1, got " + std::to_string(p));
    if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0, got " + std::to_string(lambda));
    const double mean = expectation(dist);
    double moment = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        moment += dist.probs[i] * std::pow(std::abs(dist.atoms[i] - mean), p);
    return mean + lambda * std::pow(moment, 1.0 / p);
}

double mean_upper_semideviation(const DiscreteDistribution& dist, double lambda, double p) {
    dist.check_valid();
    if (!(p >= 1.0)) throw DomainError("deviation order must be >= 1, got " + std::to_string(p));
    if (!(lambda >= 0.0) || lambda > 1.0)
        throw DomainError("semideviation lambda must lie in [0,1], got " + std::to_string(lambda));
    const double mean = expectation(dist);
    double moment = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double up = std::max(0.0, dist.atoms[i] - mean);
        moment += dist.probs[i] * std::pow(up, p);
    }
    return mean + lambda * std::pow(moment, 1.0 / p);
}

double worst_loss(const DiscreteDistribution& dist, double lambda) {
    dist.check_valid();
    if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0, got " + std::to_string(lambda));
    return expectation(dist) + lambda * essential_infimum(dist);
}

double entropic_g(const DiscreteDistribution& dist, double lambda, double tau) {
    dist.check_valid();
    if (!(lambda > 0.0)) throw DomainError("lambda must be > 0, got " + std::to_string(lambda));
    if (!(tau > 0.0)) throw DomainError("tau must be > 0, got " + std::to_string(tau));
    // Max-shifted log-sum-exp over the support.
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist.probs[i] > 0.0) shift = std::max(shift, lambda * dist.atoms[i] / tau);
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist.probs[i] > 0.0)
            acc += dist.probs[i] * std::exp(lambda * dist.atoms[i] / tau - shift);
    const double value = (tau / lambda) * (shift + std::log(acc));
    if (!std::isfinite(value))
        throw NumericError("certainty-equivalent overflow at tau = " + std::to_string(tau));
    return value;
}

HomogenizedCe homogenized_ce_detail(const DiscreteDistribution& dist, double lambda) {
    dist.check_valid();
    if (!(lambda > 0.0)) throw DomainError("lambda must be > 0, got " + std::to_string(lambda));
    const double lo = essential_infimum(dist);
    const double hi = essential_supremum(dist);
    const double range = hi - lo;
    if (range <= 0.0) return HomogenizedCe{lo, 1.0};

    const double tau_min = 1e-3 * range / lambda;
    const double tau_max = 1e3 * (range + 1.0);
    const int probes = 200;
    const double log_lo = std::log(tau_min);
    const double log_hi = std::log(tau_max);

    auto g = [&](double tau) { return entropic_g(dist, lambda, tau); };

    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> taus(probes);
    for (int i = 0; i < probes; ++i) {
        taus[i] = std::exp(log_lo + (log_hi - log_lo) * i / double(probes - 1));
        const double v = g(taus[i]);
        if (!std::isfinite(v))
            throw NumericError("non-finite bracket value at tau = " + std::to_string(taus[i]));
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }

    // Golden-section refinement inside the neighbouring probe interval.
    double a = taus[std::max(0, best - 1)];
    double b = taus[std::min(probes - 1, best + 1)];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = g(x1);
    double f2 = g(x2);
    while ((b - a) > 1e-8 * b) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = g(x2);
        }
    }
    double tau_at = taus[best];
    double value = best_val;
    if (f1 < value) {
        value = f1;
        tau_at = x1;
    }
    if (f2 < value) {
        value = f2;
        tau_at = x2;
    }
    return HomogenizedCe{value, tau_at};
}

double homogenized_ce(const DiscreteDistribution& dist, double lambda) {
    return homogenized_ce_detail(dist, lambda).value;
}

} // namespace riskmdp
