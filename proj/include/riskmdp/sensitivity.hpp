#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riskmdp/mdp.hpp"
#include "riskmdp/solver.hpp"

namespace riskmdp {

/// Uniform rectangular grid on [0,1]^d, lexicographically ordered.
struct ThetaGrid {
    std::vector<std::vector<double>> points;
    std::vector<double> spacing;               ///< per-axis step (0 for single-point axes)
    std::vector<std::size_t> counts;           ///< per-axis point counts
    std::vector<std::vector<std::size_t>> index_tuples;

    std::size_t size() const { return points.size(); }
};

/// counts[i] points on axis i: linspace(0,1,n), n == 1 collapsing to {0}.
ThetaGrid make_grid(const std::vector<std::size_t>& counts);

/// The constants feeding the value-function Lipschitz bounds.
struct LipschitzBudget {
    double L_c = 0.0;           ///< joint constant: max of the two components below
    double L_c_theta = 0.0;     ///< parameter-direction component
    double L_c_state = 0.0;     ///< state-direction component
    double L_c_terminal = 0.0;  ///< finite horizon only
    double L_D = 0.0;
    double L_rho = 0.0;
    double gamma_bar = 0.0;
    bool l_rho_estimated = false; ///< true when L_rho is a probe-based lower estimate

    bool feasible_infinite() const {
        return (1.0 + L_rho) * (1.0 + L_D) < 1.0 / gamma_bar;
    }
};

/// Finite-horizon Lipschitz schedule, returned as [L_{v_T}, ..., L_{v_0}]:
/// L_{v_T} = L_c_T and L_{v_t} = L_c_t (1+L_D) + L_{v_{t+1}} (1+L_rho_t)(1+L_D).
///
/// L_c has T+1 entries (stage costs then terminal) and L_rho has T. The
/// discount parameter scales the carried term and defaults to 1 (the
/// finite-horizon objective is undiscounted); passing gamma_bar turns the
/// recursion into the sequence whose T -> infinity limit is the
/// infinite-horizon constant, which the tests use as an oracle for the
/// closed form.
std::vector<double> lipschitz_bound_finite(const std::vector<double>& L_c, double L_D,
                                           const std::vector<double>& L_rho, int T,
                                           double discount = 1.0);

/// Infinite-horizon constant L_inf = L_c(1+L_D) / (1 - gamma_bar(1+L_rho)(1+L_D)).
/// Throws InfeasibleBudgetError unless (1+L_rho)(1+L_D) < 1/gamma_bar.
double lipschitz_bound_infinite(const LipschitzBudget& budget);

/// Model constants from the affine structure.
///
/// L_c is exact: the larger of the theta-direction bound
/// max_{(s,a)} sum_j |cost_dirs_j(s,a)| and the state-direction slope
/// max over adjacent states / actions / box vertices of |dc| / d_S.
/// L_D = 0 (the admissible mask does not move). gamma_bar is the exact
/// box maximum. L_rho is a probe lower estimate: random unit-Lipschitz
/// value tables pushed through the risk transition at random parameter
/// pairs, flagged as estimated in the budget.
LipschitzBudget estimate_constants(const ParametricMDP& model, const RiskSpec& spec,
                                   int value_probes = 64, int theta_probes = 32,
                                   std::uint64_t seed = 20240901);
LipschitzBudget estimate_constants(const ParametricMDP& model);

/// One grid pair's worth of sweep data.
struct PairDelta {
    std::size_t i, j;
    double d_theta;
    double sup_delta_v;
    double ratio;
    bool policy_changed;
};

/// Everything a theta sweep produces: solutions per grid point, all
/// pairwise value deltas, and the adjacency structure for stability maps.
struct SweepReport {
    ThetaGrid grid;
    std::vector<ValueTable> values;
    std::vector<PolicyTable> policies;
    std::vector<PairDelta> pairs;                  ///< i < j, lexicographic
    std::vector<std::pair<std::size_t, std::size_t>> adjacent; ///< one-step grid edges
    double epsilon = 0.0;                          ///< per-solve certified error
    double empirical_ratio = 0.0;                  ///< max over pairs of ratio
    std::optional<double> bound;                   ///< theoretical L if a budget was supplied
};

/// Solve at every grid point and fill all pairwise deltas.
///
/// Infinite-horizon models run value iteration to epsilon at each point;
/// finite-horizon models run exact backward induction (v_0 and the stage-0
/// policy are recorded). Solver failures propagate naming the offending
/// theta.
SweepReport sweep(const ParametricMDP& model, const RiskSpec& spec, const ThetaGrid& grid,
                  double epsilon);
SweepReport sweep(const ParametricMDP& model, const ThetaGrid& grid, double epsilon);

struct ConformanceResult {
    bool pass;
    std::size_t worst_i = 0, worst_j = 0;
    double worst_excess = 0.0; ///< max over pairs of delta - (bound*d + 2 eps); <= 0 passes
};

/// Check sup_s |v(s,th_i) - v(s,th_j)| <= bound * d(th_i,th_j) + 2 eps for
/// every grid pair. The 2-epsilon allowance covers the certified solver
/// error on each side; without it the test would be unsound.
ConformanceResult conformance(const SweepReport& report, double bound);

/// Adjacent grid edges whose policies differ in at least one state,
/// ordered by grid index. The empirical stand-in for policy lower
/// semicontinuity: edges concentrate on crossing points as the grid refines.
std::vector<std::pair<std::size_t, std::size_t>> policy_stability(const SweepReport& report);

/// CSV report: one row per grid pair with columns
/// theta_i, theta_j, d_theta, sup_delta_v, ratio, bound, slack, policy_changed.
/// Vector thetas are ';'-joined inside the field; floats carry 17
/// significant digits.
std::string sweep_to_csv(const SweepReport& report);

/// JSON mirror of SweepReport.
std::string sweep_to_json(const SweepReport& report);

} // namespace riskmdp
