#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "riskmdp/mdp.hpp"

namespace riskmdp {
namespace zoo {

/// EV-charging aggregator toy, d = 2.
///
/// State = backlog level 0..levels-1, action = charge rate (admissible
/// rates <= backlog). Stage cost = price(theta_1)*rate +
/// penalty*(backlog - rate). The arrival kernel mixes a base distribution
/// with an upward-shifted one via theta_1; the CVaR level is affine in
/// theta_2 (0.3 + 0.4*theta_2).
ParametricMDP ev_charging(int levels = 3, int max_rate = 2, double price_dir = 0.5,
                          double demand_shift = 0.4);

/// Birth-death chain with theta-shifted upward drift, d = 1; satisfies the
/// monotone-MDP clauses at every box vertex.
ParametricMDP monotone_chain(int n = 3);

/// Seed-deterministic random family: K = d+1 mixed kernels, uniform [0,1]
/// base costs with direction vectors kept nonnegative at the box extremes,
/// constant discount in (0, 0.95].
ParametricMDP random_mdp(std::uint64_t seed, int n_states, int n_actions, int d);

/// 1 state, 1 action, c = 1, gamma = 0.5: v = 2 for every coherent kind.
ParametricMDP single_state();

/// Deterministic 2-cycle with costs (1,3), gamma = 0.5: v = (10/3, 14/3).
ParametricMDP two_cycle();

/// 1 state, c(theta) = 1 + theta, gamma = 0.5: v(theta) = 2(1+theta),
/// the exactly-solvable Lipschitz conformance instance (ratio = bound = 2).
ParametricMDP scalar_affine();

/// T = 1 risk-reversal instance: a mean-cheap lottery against a safe
/// surcharge; cvar lambda(theta) = theta crosses at lambda = 2/7.
ParametricMDP pref_reversal();

/// Nothing depends on theta; every sweep delta is solver noise.
ParametricMDP constant_model();

/// Recipe lookup by name with key=value overrides, e.g.
/// make("ev_charging", {{"levels","4"}}). Throws DomainError for unknown
/// names or parameters.
ParametricMDP make(const std::string& name, const std::map<std::string, std::string>& params = {});

/// Names accepted by make(), in a fixed order.
std::vector<std::string> recipe_names();

/// The canonical shipped instances exercised by the sweep/monotone suites.
std::vector<std::pair<std::string, ParametricMDP>> shipped_models();

} // namespace zoo
} // namespace riskmdp
