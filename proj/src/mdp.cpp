#include "riskmdp/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "riskmdp/errors.hpp"

namespace riskmdp {

namespace {

std::string idx3(std::size_t a, std::size_t b, std::size_t c) {
    return "/" + std::to_string(a) + "/" + std::to_string(b) + "/" + std::to_string(c);
}

std::string theta_str(const std::vector<double>& theta) {
    std::string s = "(";
    for (std::size_t j = 0; j < theta.size(); ++j)
        s += (j ? "," : "") + std::to_string(theta[j]);
    return s + ")";
}

} // namespace

std::vector<std::size_t> ParametricMDP::admissible_actions(std::size_t s) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < n_actions; ++a)
        if (action_mask[s][a]) out.push_back(a);
    return out;
}

std::vector<std::size_t> ConcreteMDP::admissible_actions(std::size_t s) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < n_actions; ++a)
        if (action_mask[s][a]) out.push_back(a);
    return out;
}

ConcreteMDP instantiate(const ParametricMDP& model, const std::vector<double>& theta) {
    if (theta.size() != model.param_dim)
        throw ModelError("theta has " + std::to_string(theta.size()) + " components, expected " +
                         std::to_string(model.param_dim));
    for (std::size_t j = 0; j < theta.size(); ++j)
        if (theta[j] < 0.0 || theta[j] > 1.0)
            throw ModelError("theta[" + std::to_string(j) + "] = " + std::to_string(theta[j]) +
                             " outside [0,1]");

    const std::vector<double> w = model.kernel_weights(theta);
    double wsum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] < -1e-12)
            throw ModelError("kernel weight w[" + std::to_string(k) + "](theta) = " +
                             std::to_string(w[k]) + " negative at " + theta_str(theta));
        wsum += w[k];
    }
    if (std::abs(wsum - 1.0) > 1e-10)
        throw ModelError("kernel weights sum to " + std::to_string(wsum) + " at " +
                         theta_str(theta));

    ConcreteMDP out;
    out.n_states = model.n_states;
    out.n_actions = model.n_actions;
    out.action_mask = model.action_mask;
    out.theta = theta;
    out.gamma = model.discount_map(theta);

    out.q.assign(model.n_states,
                 std::vector<std::vector<double>>(model.n_actions,
                                                  std::vector<double>(model.n_states, 0.0)));
    for (std::size_t k = 0; k < model.kernel_components.size(); ++k) {
        if (w[k] == 0.0) continue;
        const auto& comp = model.kernel_components[k];
        for (std::size_t s = 0; s < model.n_states; ++s)
            for (std::size_t a = 0; a < model.n_actions; ++a)
                for (std::size_t t = 0; t < model.n_states; ++t)
                    out.q[s][a][t] += w[k] * comp[s][a][t];
    }

    out.c.assign(model.n_states, std::vector<double>(model.n_actions, 0.0));
    for (std::size_t s = 0; s < model.n_states; ++s)
        for (std::size_t a = 0; a < model.n_actions; ++a) {
            double c = model.cost_base[s][a];
            for (std::size_t j = 0; j < model.param_dim; ++j)
                c += theta[j] * model.cost_dirs[j][s][a];
            if (model.action_mask[s][a] && c < -1e-12)
                throw ModelError("cost c(" + std::to_string(s) + "," + std::to_string(a) +
                                 ") = " + std::to_string(c) + " negative at " + theta_str(theta));
            out.c[s][a] = c;
        }

    if (!model.is_infinite_horizon()) {
        out.terminal_cost.assign(model.n_states, 0.0);
        for (std::size_t s = 0; s < model.n_states; ++s) {
            double c = model.terminal_cost_base.empty() ? 0.0 : model.terminal_cost_base[s];
            for (std::size_t j = 0; j < model.terminal_cost_dirs.size(); ++j)
                c += theta[j] * model.terminal_cost_dirs[j][s];
            if (c < -1e-12)
                throw ModelError("terminal cost at state " + std::to_string(s) + " = " +
                                 std::to_string(c) + " negative at " + theta_str(theta));
            out.terminal_cost[s] = c;
        }
    }
    return out;
}

std::vector<Diagnostic> validate(const ParametricMDP& model) {
    std::vector<Diagnostic> diags;
    auto add = [&](std::string path, std::string msg, double mag) {
        diags.push_back(Diagnostic{std::move(path), std::move(msg), mag});
    };

    if (model.n_states == 0) add("/n_states", "model needs at least one state", 0);
    if (model.n_actions == 0) add("/n_actions", "model needs at least one action", 0);
    if (model.state_coords.size() != model.n_states)
        add("/state_coords", "expected one coordinate vector per state", 0);
    if (model.action_mask.size() != model.n_states)
        add("/action_mask", "expected one row per state", 0);
    if (model.horizon && *model.horizon < 1)
        add("/horizon", "finite horizon must be >= 1", double(*model.horizon));
    if (!diags.empty()) return diags; // shapes are broken; numeric checks would throw

    // Kernel components: stochastic rows, nonnegative entries.
    for (std::size_t k = 0; k < model.kernel_components.size(); ++k) {
        const auto& comp = model.kernel_components[k];
        if (comp.size() != model.n_states) {
            add("/kernel_components/" + std::to_string(k), "expected one row block per state", 0);
            continue;
        }
        for (std::size_t s = 0; s < model.n_states; ++s) {
            if (comp[s].size() != model.n_actions) {
                add("/kernel_components/" + std::to_string(k) + "/" + std::to_string(s),
                    "expected one row per action", 0);
                continue;
            }
            for (std::size_t a = 0; a < model.n_actions; ++a) {
                if (comp[s][a].size() != model.n_states) {
                    add("/kernel_components" + idx3(k, s, a), "row length != n_states", 0);
                    continue;
                }
                double total = 0.0;
                for (std::size_t t = 0; t < model.n_states; ++t) {
                    if (comp[s][a][t] < 0.0)
                        add("/kernel_components" + idx3(k, s, a) + "/" + std::to_string(t),
                            "negative kernel entry", -comp[s][a][t]);
                    total += comp[s][a][t];
                }
                if (std::abs(total - 1.0) > 1e-10)
                    add("/kernel_components" + idx3(k, s, a),
                        "row sums to " + std::to_string(total), std::abs(total - 1.0));
            }
        }
    }

    // Mixture weights: on the simplex across the whole box. Each weight is
    // affine, so the box minimum decides nonnegativity; the sum is affine,
    // so it equals 1 everywhere iff it does at intercept and all coefficient
    // columns cancel.
    const std::size_t K = model.kernel_weights.size();
    if (K != model.kernel_components.size())
        add("/kernel_weights", "weight count != component count", 0);
    double intercept_sum = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const AffineMap wk = model.kernel_weights.component(k);
        intercept_sum += wk.intercept;
        const double lo = wk.min_on_box();
        if (lo < -1e-12)
            add("/kernel_weights/" + std::to_string(k),
                "weight drops to " + std::to_string(lo) + " on the box", -lo);
    }
    if (std::abs(intercept_sum - 1.0) > 1e-10)
        add("/kernel_weights", "weights sum to " + std::to_string(intercept_sum) + " at theta = 0",
            std::abs(intercept_sum - 1.0));
    for (std::size_t j = 0; j < model.param_dim; ++j) {
        double col = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            if (k < model.kernel_weights.coeffs.size() &&
                j < model.kernel_weights.coeffs[k].size())
                col += model.kernel_weights.coeffs[k][j];
        if (std::abs(col) > 1e-10)
            add("/kernel_weights", "weight sum drifts along axis " + std::to_string(j),
                std::abs(col));
    }

    // Costs: nonnegative across the box for admissible pairs.
    if (model.cost_base.size() != model.n_states)
        add("/cost_base", "expected one row per state", 0);
    if (model.cost_dirs.size() != model.param_dim)
        add("/cost_dirs", "expected one tensor per parameter axis", 0);
    for (std::size_t s = 0; s < model.n_states && s < model.cost_base.size(); ++s) {
        if (model.cost_base[s].size() != model.n_actions) {
            add("/cost_base/" + std::to_string(s), "expected one entry per action", 0);
            continue;
        }
        for (std::size_t a = 0; a < model.n_actions; ++a) {
            if (!model.action_mask[s][a]) continue;
            AffineMap c{model.cost_base[s][a], std::vector<double>(model.param_dim, 0.0)};
            for (std::size_t j = 0; j < model.param_dim && j < model.cost_dirs.size(); ++j)
                c.coeffs[j] = model.cost_dirs[j][s][a];
            const double lo = c.min_on_box();
            if (lo < -1e-12)
                add("/cost_base/" + std::to_string(s) + "/" + std::to_string(a),
                    "cost drops to " + std::to_string(lo) + " on the box", -lo);
        }
    }
    if (!model.is_infinite_horizon()) {
        if (model.terminal_cost_base.size() != model.n_states)
            add("/terminal_cost_base", "expected one entry per state", 0);
        for (std::size_t s = 0; s < model.terminal_cost_base.size(); ++s) {
            AffineMap c{model.terminal_cost_base[s], std::vector<double>(model.param_dim, 0.0)};
            for (std::size_t j = 0; j < model.terminal_cost_dirs.size(); ++j)
                if (s < model.terminal_cost_dirs[j].size()) c.coeffs[j] = model.terminal_cost_dirs[j][s];
            const double lo = c.min_on_box();
            if (lo < -1e-12)
                add("/terminal_cost_base/" + std::to_string(s),
                    "terminal cost drops to " + std::to_string(lo) + " on the box", -lo);
        }
    }

    // Discount bound gamma(theta) in (0, gamma_bar], gamma_bar < 1.
    {
        const double hi = model.discount_map.max_on_box();
        const double lo = model.discount_map.min_on_box();
        if (hi >= 1.0)
            add("/discount", "discount bound gamma_bar < 1 violated (max " + std::to_string(hi) +
                                 " on the box)",
                hi - 1.0);
        if (lo <= 0.0)
            add("/discount", "discount must stay positive (min " + std::to_string(lo) + ")", -lo);
    }

    // Every state keeps at least one admissible action.
    for (std::size_t s = 0; s < model.n_states && s < model.action_mask.size(); ++s) {
        if (model.action_mask[s].size() != model.n_actions) {
            add("/action_mask/" + std::to_string(s), "expected one flag per action", 0);
            continue;
        }
        if (model.admissible_actions(s).empty())
            add("/action_mask/" + std::to_string(s), "state has no admissible action", 0);
    }

    // Risk level admissible across the box.
    if (!model.risk.lambda_admissible_on_box()) {
        const Interval r = model.risk.admissible_range();
        add("/risk/lambda",
            "lambda([0,1]^d) = [" + std::to_string(model.risk.lambda_map.min_on_box()) + ", " +
                std::to_string(model.risk.lambda_map.max_on_box()) + "] leaves admissible " +
                r.describe(),
            0);
    }

    return diags;
}

MonotoneReport check_monotone(const ParametricMDP& model, const std::vector<double>& theta) {
    // Total order by first state coordinate.
    std::vector<std::size_t> order(model.n_states);
    for (std::size_t s = 0; s < model.n_states; ++s) order[s] = s;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return model.state_coords[a][0] < model.state_coords[b][0];
    });
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (model.state_coords[order[i]][0] == model.state_coords[order[i + 1]][0])
            throw DomainError("states " + std::to_string(order[i]) + " and " +
                              std::to_string(order[i + 1]) +
                              " share the first coordinate; the state order must be total");

    const ConcreteMDP mdp = instantiate(model, theta);
    MonotoneReport report;

    // rank position of each state in the coordinate order
    std::vector<std::size_t> rank(model.n_states);
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    auto tail_mass = [&](const std::vector<double>& row, std::size_t from_rank) {
        double m = 0.0;
        for (std::size_t t = 0; t < row.size(); ++t)
            if (rank[t] >= from_rank) m += row[t];
        return m;
    };

    double worst_fosd = 0.0, worst_cost = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const std::size_t lo = order[i], hi = order[j];
            for (std::size_t a = 0; a < model.n_actions; ++a) {
                if (!model.action_mask[lo][a] || !model.action_mask[hi][a]) continue;
                // FOSD: P(next >= z | lo) <= P(next >= z | hi) at every threshold
                for (std::size_t z = 0; z < order.size(); ++z) {
                    const double gap =
                        tail_mass(mdp.q[lo][a], z) - tail_mass(mdp.q[hi][a], z);
                    if (gap > 1e-10 && gap > worst_fosd) {
                        worst_fosd = gap;
                        report.fosd_ok = false;
                        report.fosd_violation = {int(lo), int(hi), int(a)};
                    }
                }
                const double cgap = mdp.c[lo][a] - mdp.c[hi][a];
                if (cgap > 1e-10 && cgap > worst_cost) {
                    worst_cost = cgap;
                    report.cost_mono_ok = false;
                    report.cost_violation = {int(lo), int(hi), int(a)};
                }
            }
        }
    }

    // Admissible sets must form a chain along the order, in one consistent
    // direction (uniformly shrinking or uniformly growing).
    auto superset = [&](std::size_t s, std::size_t t) {
        for (std::size_t a = 0; a < model.n_actions; ++a)
            if (model.action_mask[t][a] && !model.action_mask[s][a]) return false;
        return true;
    };
    bool shrinking = true, growing = true;
    std::array<int, 2> first_bad_shrink{-1, -1}, first_bad_grow{-1, -1};
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const std::size_t lo = order[i], hi = order[i + 1];
        if (!superset(lo, hi) && shrinking) {
            shrinking = false;
            first_bad_shrink = {int(lo), int(hi)};
        }
        if (!superset(hi, lo) && growing) {
            growing = false;
            first_bad_grow = {int(lo), int(hi)};
        }
    }
    report.mask_nesting_ok = shrinking || growing;
    if (!report.mask_nesting_ok) {
        report.mask_violation = first_bad_shrink;
    } else if (shrinking && growing) {
        report.mask_direction = 0;
    } else {
        report.mask_direction = growing ? +1 : -1;
    }
    return report;
}

} // namespace riskmdp
