#pragma once

#include <cstddef>
#include <vector>

#include "riskmdp/mdp.hpp"

namespace riskmdp {

/// Per-state optimal values at the parameter point they were solved for.
struct ValueTable {
    std::vector<double> values;
    std::vector<double> theta;
};

/// Per-state greedy action indices (ties resolved to the smallest index).
struct PolicyTable {
    std::vector<int> actions;
    std::vector<double> theta;
};

struct SolveStats {
    int iterations = 0;
    double final_residual = 0.0;
    double error_bound = 0.0; ///< certified ||v - v*||_inf = residual * gamma/(1-gamma)
};

/// One application of the risk-sensitive Bellman operator:
/// (Tv)(s) = min over admissible a of c(s,a) + gamma * sigma(v, q(s,a)).
struct BackupResult {
    ValueTable value;
    PolicyTable greedy;
};
BackupResult bellman_backup(const ConcreteMDP& mdp, const RiskSpec& spec,
                            const std::vector<double>& theta, const std::vector<double>& v);

/// Value iteration from v == 0 to a certified epsilon-accurate fixed point.
///
/// Stops once the sup-norm update drops to epsilon*(1-gamma)/gamma, which
/// certifies ||v - v*||_inf <= epsilon by the contraction constant
/// gamma(theta). Costs are nonnegative, so iterates climb monotonically to
/// the fixed point. Throws SolverError with the residual trajectory if the
/// iteration cap is hit.
struct InfiniteSolution {
    ValueTable value;
    PolicyTable policy;
    SolveStats stats;
};
InfiniteSolution solve_infinite(const ParametricMDP& model, const RiskSpec& spec,
                                const std::vector<double>& theta, double epsilon,
                                long max_iterations = 1000000);

/// Overload using the model's bundled risk spec.
InfiniteSolution solve_infinite(const ParametricMDP& model, const std::vector<double>& theta,
                                double epsilon, long max_iterations = 1000000);

/// Exact undiscounted backward induction for horizon T:
/// v_T = terminal cost, v_t = min_a c(s,a) + sigma(v_{t+1}, q(s,a)).
struct FiniteSolution {
    std::vector<ValueTable> values;    ///< v_0 .. v_T
    std::vector<PolicyTable> policies; ///< pi_0 .. pi_{T-1}
};
FiniteSolution solve_finite(const ParametricMDP& model, const RiskSpec& spec,
                            const std::vector<double>& theta);
FiniteSolution solve_finite(const ParametricMDP& model, const std::vector<double>& theta);

/// Independent finite-horizon oracle: enumerate every deterministic Markov
/// policy and evaluate its nested objective by recursing over the scenario
/// tree from the leaves inward, applying rho at each stage; returns the
/// minimum over policies of the value at initial_state.
///
/// Shares no code with bellman_backup. Guarded to <= 10^6 policies,
/// T <= 4 and n_states <= 4 (OracleScaleError beyond that).
double brute_force_finite(const ParametricMDP& model, const RiskSpec& spec,
                          const std::vector<double>& theta, std::size_t initial_state = 0);

} // namespace riskmdp
