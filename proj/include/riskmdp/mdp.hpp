#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "riskmdp/affine.hpp"
#include "riskmdp/risk_spec.hpp"

namespace riskmdp {

/// Vector-valued affine map theta -> w(theta), one AffineMap per output.
struct AffineVectorMap {
    std::vector<double> intercept;
    std::vector<std::vector<double>> coeffs; ///< [output][theta axis]

    std::size_t size() const { return intercept.size(); }

    std::vector<double> operator()(const std::vector<double>& theta) const {
        std::vector<double> out(intercept);
        for (std::size_t k = 0; k < out.size(); ++k)
            if (k < coeffs.size())
                for (std::size_t j = 0; j < coeffs[k].size() && j < theta.size(); ++j)
                    out[k] += coeffs[k][j] * theta[j];
        return out;
    }

    AffineMap component(std::size_t k) const {
        return AffineMap{intercept[k], k < coeffs.size() ? coeffs[k] : std::vector<double>{}};
    }
};

/// 3-d stochastic tensor q[state][action][next_state].
using KernelTensor = std::vector<std::vector<std::vector<double>>>;
/// Cost matrix c[state][action].
using CostMatrix = std::vector<std::vector<double>>;

/// Finite-state, finite-action MDP family over the parameter box [0,1]^d.
///
/// Kernel rows are a theta-mixture of K fixed stochastic tensors; costs and
/// discount are affine in theta; the admissible-action mask is fixed. The
/// bundled RiskSpec carries the decision-maker's parametric risk measure.
struct ParametricMDP {
    std::size_t n_states = 0;
    std::vector<std::vector<double>> state_coords; ///< per-state coordinates; the first
                                                   ///< coordinate orders the states
    std::size_t n_actions = 0;
    std::vector<std::vector<bool>> action_mask;    ///< [state][action]

    std::size_t param_dim = 0;

    std::vector<KernelTensor> kernel_components;   ///< K stochastic tensors
    AffineVectorMap kernel_weights;                ///< theta -> simplex weights over K

    CostMatrix cost_base;                          ///< [s][a]
    std::vector<CostMatrix> cost_dirs;             ///< [theta axis][s][a]

    std::vector<double> terminal_cost_base;        ///< per-state; finite horizon only
    std::vector<std::vector<double>> terminal_cost_dirs; ///< [theta axis][s]

    AffineMap discount_map;                        ///< theta -> gamma(theta)
    std::optional<int> horizon;                    ///< nullopt = infinite, else T >= 1

    RiskSpec risk;

    bool is_infinite_horizon() const { return !horizon.has_value(); }

    /// Largest discount over the box (the contraction constant gamma_bar).
    double gamma_bar() const { return discount_map.max_on_box(); }

    std::vector<std::size_t> admissible_actions(std::size_t s) const;
};

/// The model frozen at one parameter point.
struct ConcreteMDP {
    std::size_t n_states = 0;
    std::size_t n_actions = 0;
    KernelTensor q;
    CostMatrix c;
    std::vector<double> terminal_cost; ///< empty for infinite horizon
    double gamma = 0.0;
    std::vector<std::vector<bool>> action_mask;
    std::vector<double> theta;

    std::vector<std::size_t> admissible_actions(std::size_t s) const;
};

/// One validation finding: where, what, and how large.
struct Diagnostic {
    std::string path;    ///< JSON-pointer-ish location, e.g. /kernel_components/0/2/1
    std::string message;
    double magnitude = 0.0;
};

/// Instantiate the family at theta.
///
/// q(theta) = sum_k w_k(theta) q_k, costs and discount from their affine
/// maps. Throws ModelError for theta outside the box, weights off the
/// simplex, or any admissible cost entry below -1e-12 (an error, never a
/// silent clamp: clamping would break affinity in theta).
ConcreteMDP instantiate(const ParametricMDP& model, const std::vector<double>& theta);

/// Full structural audit; empty result means the model is well formed.
///
/// Checks stochastic kernel rows, simplex weights and nonnegative costs at
/// the box extremes, the discount bound gamma_bar < 1, nonempty admissible
/// sets, the risk spec's lambda range, and shape consistency throughout.
std::vector<Diagnostic> validate(const ParametricMDP& model);

/// Findings of the monotone-MDP check at one parameter point.
struct MonotoneReport {
    bool fosd_ok = true;
    bool cost_mono_ok = true;
    bool mask_nesting_ok = true;
    /// +1 when admissible sets grow along the state order, -1 when they
    /// shrink, 0 when constant; meaningful only if mask_nesting_ok.
    int mask_direction = 0;
    /// Worst violating (s, s', a) triples; {-1,-1,-1} when the check passed.
    std::array<int, 3> fosd_violation{-1, -1, -1};
    std::array<int, 3> cost_violation{-1, -1, -1};
    std::array<int, 2> mask_violation{-1, -1};

    bool all_ok() const { return fosd_ok && cost_mono_ok && mask_nesting_ok; }
};

/// Monotone-MDP audit: kernel rows ordered by first stochastic dominance
/// along the state order, costs nondecreasing in the state, and admissible
/// sets nested consistently in one direction.
///
/// States are ordered by their first coordinate; ties are rejected with a
/// DomainError since the order must be total. FOSD compares tail sums at
/// every state-coordinate threshold for each action admissible in both
/// states of a pair.
MonotoneReport check_monotone(const ParametricMDP& model, const std::vector<double>& theta);

} // namespace riskmdp
