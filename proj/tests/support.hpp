#pragma once

// Shared helpers for the unit and acceptance suites. The solver oracles here
// (classical value iteration, the threshold-set dominance check) are written
// against the raw model arrays on purpose: they must not share code with the
// library paths they audit.

#include <algorithm>
#include <cmath>
#include <vector>

#include "riskmdp/mdp.hpp"
#include "riskmdp/rng.hpp"

namespace testsupport {

inline riskmdp::DiscreteDistribution random_dist(riskmdp::Rng& rng, std::size_t max_atoms = 20,
                                                 double lo = -5.0, double hi = 10.0) {
    const std::size_t n = 1 + rng.below(max_atoms);
    std::vector<double> atoms(n);
    for (auto& a : atoms) a = rng.uniform(lo, hi);
    return riskmdp::DiscreteDistribution(std::move(atoms), rng.simplex(n));
}

// Risk-neutral value iteration, coded independently of bellman_backup.
inline std::vector<double> classical_value_iteration(const riskmdp::ParametricMDP& model,
                                                     const std::vector<double>& theta,
                                                     double tol = 1e-12) {
    const riskmdp::ConcreteMDP mdp = riskmdp::instantiate(model, theta);
    std::vector<double> v(mdp.n_states, 0.0);
    for (int it = 0; it < 2000000; ++it) {
        std::vector<double> next(mdp.n_states, 0.0);
        double residual = 0.0;
        for (std::size_t s = 0; s < mdp.n_states; ++s) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < mdp.n_actions; ++a) {
                if (!mdp.action_mask[s][a]) continue;
                double ev = 0.0;
                for (std::size_t t2 = 0; t2 < mdp.n_states; ++t2)
                    ev += mdp.q[s][a][t2] * v[t2];
                best = std::min(best, mdp.c[s][a] + mdp.gamma * ev);
            }
            next[s] = best;
            residual = std::max(residual, std::abs(next[s] - v[s]));
        }
        v = next;
        if (residual <= tol * (1.0 - mdp.gamma)) break;
    }
    return v;
}

// Dominance audit by brute enumeration of every threshold set along the
// state order; mirrors what check_monotone must compute.
inline bool brute_force_fosd(const riskmdp::ParametricMDP& model,
                             const std::vector<double>& theta) {
    const riskmdp::ConcreteMDP mdp = riskmdp::instantiate(model, theta);
    std::vector<std::size_t> order(model.n_states);
    for (std::size_t s = 0; s < model.n_states; ++s) order[s] = s;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return model.state_coords[a][0] < model.state_coords[b][0];
    });
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            for (std::size_t a = 0; a < model.n_actions; ++a) {
                if (!model.action_mask[order[i]][a] || !model.action_mask[order[j]][a]) continue;
                for (std::size_t z = 0; z < order.size(); ++z) {
                    double lo_tail = 0.0, hi_tail = 0.0;
                    for (std::size_t r = z; r < order.size(); ++r) {
                        lo_tail += mdp.q[order[i]][a][order[r]];
                        hi_tail += mdp.q[order[j]][a][order[r]];
                    }
                    if (lo_tail > hi_tail + 1e-10) return false;
                }
            }
    return true;
}

} // namespace testsupport
