#include "riskmdp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "riskmdp/envelope.hpp"
#include "riskmdp/errors.hpp"

namespace riskmdp {

namespace {

// Shared by the discounted operator and the undiscounted finite-horizon step.
BackupResult backup_with(const ConcreteMDP& mdp, const RiskSpec& spec,
                         const std::vector<double>& theta, const std::vector<double>& v,
                         double discount) {
    BackupResult out;
    out.value.values.assign(mdp.n_states, 0.0);
    out.value.theta = theta;
    out.greedy.actions.assign(mdp.n_states, -1);
    out.greedy.theta = theta;
    for (std::size_t s = 0; s < mdp.n_states; ++s) {
        double best = std::numeric_limits<double>::infinity();
        int best_a = -1;
        bool any_admissible = false;
        for (std::size_t a = 0; a < mdp.n_actions; ++a) {
            if (!mdp.action_mask[s][a]) continue;
            any_admissible = true;
            const double cand =
                mdp.c[s][a] + discount * risk_transition(spec, theta, v, mdp.q[s][a]);
            if (cand < best) { // strict: ties keep the smallest action index
                best = cand;
                best_a = int(a);
            }
        }
        if (!any_admissible)
            throw ModelError("state " + std::to_string(s) + " has no admissible action");
        if (best_a < 0 || !std::isfinite(best))
            throw NumericError("backup produced a non-finite value at state " +
                               std::to_string(s) + "; the recursion is diverging");
        out.value.values[s] = best;
        out.greedy.actions[s] = best_a;
    }
    return out;
}

void require_valid(const ParametricMDP& model) {
    const auto diags = validate(model);
    if (!diags.empty())
        throw ModelError("model failed validation: " + diags.front().path + ": " +
                         diags.front().message);
}

} // namespace

BackupResult bellman_backup(const ConcreteMDP& mdp, const RiskSpec& spec,
                            const std::vector<double>& theta, const std::vector<double>& v) {
    if (v.size() != mdp.n_states)
        throw ModelError("value table has " + std::to_string(v.size()) + " states, expected " +
                         std::to_string(mdp.n_states));
    for (double x : v)
        if (!std::isfinite(x)) throw ModelError("value table has a non-finite entry");
    return backup_with(mdp, spec, theta, v, mdp.gamma);
}

InfiniteSolution solve_infinite(const ParametricMDP& model, const RiskSpec& spec,
                                const std::vector<double>& theta, double epsilon,
                                long max_iterations) {
    if (!model.is_infinite_horizon())
        throw ModelError("solve_infinite requires an infinite-horizon model");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
    require_valid(model);

    const ConcreteMDP mdp = instantiate(model, theta);
    const double gamma = mdp.gamma;
    // Stop when the update certifies ||v - v*||_inf <= epsilon.
    const double stop = epsilon * (1.0 - gamma) / gamma;

    std::vector<double> v(mdp.n_states, 0.0);
    std::vector<double> residuals;
    BackupResult step;
    for (long it = 1; it <= max_iterations; ++it) {
        step = backup_with(mdp, spec, theta, v, gamma);
        double residual = 0.0;
        for (std::size_t s = 0; s < mdp.n_states; ++s)
            residual = std::max(residual, std::abs(step.value.values[s] - v[s]));
        residuals.push_back(residual);
        v = step.value.values;
        if (residual <= stop) {
            InfiniteSolution sol;
            sol.value = std::move(step.value);
            sol.policy = std::move(step.greedy);
            sol.stats.iterations = int(it);
            sol.stats.final_residual = residual;
            sol.stats.error_bound = residual * gamma / (1.0 - gamma);
            return sol;
        }
    }
    const std::string msg = "value iteration did not converge in " +
                            std::to_string(max_iterations) + " iterations (last residual " +
                            std::to_string(residuals.back()) + ")";
    throw SolverError(msg, std::move(residuals));
}

InfiniteSolution solve_infinite(const ParametricMDP& model, const std::vector<double>& theta,
                                double epsilon, long max_iterations) {
    return solve_infinite(model, model.risk, theta, epsilon, max_iterations);
}

FiniteSolution solve_finite(const ParametricMDP& model, const RiskSpec& spec,
                            const std::vector<double>& theta) {
    if (model.is_infinite_horizon())
        throw ModelError("solve_finite requires a finite-horizon model");
    require_valid(model);
    const int T = *model.horizon;
    const ConcreteMDP mdp = instantiate(model, theta);

    FiniteSolution sol;
    sol.values.assign(std::size_t(T) + 1, ValueTable{});
    sol.policies.assign(std::size_t(T), PolicyTable{});
    sol.values[std::size_t(T)] = ValueTable{mdp.terminal_cost, theta};
    for (int t = T - 1; t >= 0; --t) {
        BackupResult step =
            backup_with(mdp, spec, theta, sol.values[std::size_t(t) + 1].values, 1.0);
        sol.values[std::size_t(t)] = std::move(step.value);
        sol.policies[std::size_t(t)] = std::move(step.greedy);
    }
    return sol;
}

FiniteSolution solve_finite(const ParametricMDP& model, const std::vector<double>& theta) {
    return solve_finite(model, model.risk, theta);
}

double brute_force_finite(const ParametricMDP& model, const RiskSpec& spec,
                          const std::vector<double>& theta, std::size_t initial_state) {
    if (model.is_infinite_horizon())
        throw ModelError("the brute-force oracle requires a finite horizon");
    require_valid(model);
    const int T = *model.horizon;
    const std::size_t S = model.n_states;
    if (T > 4 || S > 4)
        throw OracleScaleError("oracle guard: T <= 4 and n_states <= 4 required, got T = " +
                               std::to_string(T) + ", n_states = " + std::to_string(S));
    if (initial_state >= S) throw DomainError("initial state out of range");

    const ConcreteMDP mdp = instantiate(model, theta);

    std::vector<std::vector<std::size_t>> choices(S);
    for (std::size_t s = 0; s < S; ++s) choices[s] = mdp.admissible_actions(s);

    double policies = 1.0;
    for (int t = 0; t < T; ++t)
        for (std::size_t s = 0; s < S; ++s) policies *= double(choices[s].size());
    if (policies > 1e6)
        throw OracleScaleError("oracle guard: " + std::to_string(policies) +
                               " deterministic Markov policies exceed 10^6");

    // One policy = an action index per (t, s). The nested objective of a
    // fixed policy is evaluated by walking the scenario tree from the leaves
    // inward, applying rho at each branching; no Bellman code is reused.
    std::vector<std::vector<std::size_t>> plan(std::size_t(T), std::vector<std::size_t>(S, 0));

    auto tree_value = [&](auto&& self, int t, std::size_t s) -> double {
        if (t == T) return mdp.terminal_cost[s];
        const std::size_t a = plan[std::size_t(t)][s];
        DiscreteDistribution next;
        next.atoms.reserve(S);
        next.probs.reserve(S);
        double total = 0.0;
        for (std::size_t s2 = 0; s2 < S; ++s2) {
            next.atoms.push_back(self(self, t + 1, s2));
            next.probs.push_back(mdp.q[s][a][s2]);
            total += mdp.q[s][a][s2];
        }
        for (double& p : next.probs) p /= total; // shave mixture rounding
        return mdp.c[s][a] + evaluate(spec, theta, next);
    };

    // Odometer over all (t, s) action choices.
    std::vector<std::size_t> digits(std::size_t(T) * S, 0);
    double best = std::numeric_limits<double>::infinity();
    for (;;) {
        for (int t = 0; t < T; ++t)
            for (std::size_t s = 0; s < S; ++s)
                plan[std::size_t(t)][s] = choices[s][digits[std::size_t(t) * S + s]];
        best = std::min(best, tree_value(tree_value, 0, initial_state));

        std::size_t pos = 0;
        for (; pos < digits.size(); ++pos) {
            const std::size_t s = pos % S;
            if (++digits[pos] < choices[s].size()) break;
            digits[pos] = 0;
        }
        if (pos == digits.size()) break;
    }
    return best;
}

} // namespace riskmdp
