#include "riskmdp/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "riskmdp/envelope.hpp"
#include "riskmdp/errors.hpp"
#include "riskmdp/rng.hpp"

namespace riskmdp {

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string theta_field(const std::vector<double>& theta) {
    std::string s;
    for (std::size_t j = 0; j < theta.size(); ++j) s += (j ? ";" : "") + fmt17(theta[j]);
    return s;
}

double sup_delta(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t s = 0; s < a.size(); ++s) d = std::max(d, std::abs(a[s] - b[s]));
    return d;
}

// l1 Lipschitz norm of v w.r.t. the state coordinates.
double state_lipschitz_norm(const ParametricMDP& model, const std::vector<double>& v) {
    double norm = 0.0;
    for (std::size_t s = 0; s < model.n_states; ++s)
        for (std::size_t t = s + 1; t < model.n_states; ++t) {
            const double d = l1_distance(model.state_coords[s], model.state_coords[t]);
            if (d > 0.0) norm = std::max(norm, std::abs(v[s] - v[t]) / d);
        }
    return norm;
}

} // namespace

ThetaGrid make_grid(const std::vector<std::size_t>& counts) {
    if (counts.empty()) throw DomainError("grid needs at least one axis");
    for (std::size_t n : counts)
        if (n == 0) throw DomainError("grid axis count must be >= 1");

    ThetaGrid grid;
    grid.counts = counts;
    grid.spacing.resize(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j)
        grid.spacing[j] = counts[j] > 1 ? 1.0 / double(counts[j] - 1) : 0.0;

    std::vector<std::size_t> tuple(counts.size(), 0);
    for (;;) {
        std::vector<double> point(counts.size());
        for (std::size_t j = 0; j < counts.size(); ++j)
            point[j] = counts[j] > 1 ? double(tuple[j]) * grid.spacing[j] : 0.0;
        grid.points.push_back(std::move(point));
        grid.index_tuples.push_back(tuple);

        std::size_t axis = counts.size();
        while (axis > 0) {
            --axis;
            if (++tuple[axis] < counts[axis]) break;
            tuple[axis] = 0;
            if (axis == 0) return grid;
        }
    }
}

std::vector<double> lipschitz_bound_finite(const std::vector<double>& L_c, double L_D,
                                           const std::vector<double>& L_rho, int T,
                                           double discount) {
    if (T < 0) throw DomainError("horizon must be >= 0");
    if (L_c.size() != std::size_t(T) + 1)
        throw DomainError("need T+1 stage-cost constants (stages 0..T-1 plus terminal), got " +
                          std::to_string(L_c.size()));
    if (L_rho.size() != std::size_t(T))
        throw DomainError("need T risk constants, got " + std::to_string(L_rho.size()));
    for (double x : L_c)
        if (x < 0.0) throw DomainError("Lipschitz constants must be >= 0");
    if (L_D < 0.0) throw DomainError("Lipschitz constants must be >= 0");
    for (double x : L_rho)
        if (x < 0.0) throw DomainError("Lipschitz constants must be >= 0");

    // L_{v_T} = L_{c_T}; L_{v_t} = L_{c_t}(1+L_D) + L_{v_{t+1}}(1+L_rho_t)(1+L_D)
    std::vector<double> out;
    out.reserve(std::size_t(T) + 1);
    double carry = L_c[std::size_t(T)];
    out.push_back(carry);
    for (int t = T - 1; t >= 0; --t) {
        carry = L_c[std::size_t(t)] * (1.0 + L_D) +
                discount * carry * (1.0 + L_rho[std::size_t(t)]) * (1.0 + L_D);
        out.push_back(carry);
    }
    return out; // [L_{v_T}, ..., L_{v_0}]
}

double lipschitz_bound_infinite(const LipschitzBudget& budget) {
    if (budget.L_c < 0.0 || budget.L_D < 0.0 || budget.L_rho < 0.0)
        throw DomainError("Lipschitz constants must be >= 0");
    if (!(budget.gamma_bar > 0.0) || budget.gamma_bar >= 1.0)
        throw DomainError("gamma_bar must lie in (0,1)");
    if (!budget.feasible_infinite())
        throw InfeasibleBudgetError(
            "budget infeasible: (1+L_rho)(1+L_D) = " +
            std::to_string((1.0 + budget.L_rho) * (1.0 + budget.L_D)) +
            " must be < 1/gamma_bar = " + std::to_string(1.0 / budget.gamma_bar));
    return budget.L_c * (1.0 + budget.L_D) /
           (1.0 - budget.gamma_bar * (1.0 + budget.L_rho) * (1.0 + budget.L_D));
}

LipschitzBudget estimate_constants(const ParametricMDP& model, const RiskSpec& spec,
                                   int value_probes, int theta_probes, std::uint64_t seed) {
    LipschitzBudget budget;
    budget.L_D = 0.0; // the admissible mask does not depend on theta
    budget.gamma_bar = model.discount_map.max_on_box();

    // Exact cost constant: theta direction from the affine coefficients,
    // state direction from adjacent-state differences at the box extremes.
    double theta_slope = 0.0;
    for (std::size_t s = 0; s < model.n_states; ++s)
        for (std::size_t a = 0; a < model.n_actions; ++a) {
            if (!model.action_mask[s][a]) continue;
            double sum = 0.0;
            for (std::size_t j = 0; j < model.param_dim; ++j)
                sum += std::abs(model.cost_dirs[j][s][a]);
            theta_slope = std::max(theta_slope, sum);
        }

    std::vector<std::size_t> order(model.n_states);
    for (std::size_t s = 0; s < model.n_states; ++s) order[s] = s;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return model.state_coords[a][0] < model.state_coords[b][0];
    });
    double state_slope = 0.0;
    const auto vertices = box_vertices(model.param_dim);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const std::size_t s = order[i], t = order[i + 1];
        const double d = l1_distance(model.state_coords[s], model.state_coords[t]);
        if (d <= 0.0) continue;
        for (std::size_t a = 0; a < model.n_actions; ++a) {
            if (!model.action_mask[s][a] || !model.action_mask[t][a]) continue;
            for (const auto& vtx : vertices) {
                double cs = model.cost_base[s][a], ct = model.cost_base[t][a];
                for (std::size_t j = 0; j < model.param_dim; ++j) {
                    cs += vtx[j] * model.cost_dirs[j][s][a];
                    ct += vtx[j] * model.cost_dirs[j][t][a];
                }
                state_slope = std::max(state_slope, std::abs(cs - ct) / d);
            }
        }
    }
    budget.L_c_theta = theta_slope;
    budget.L_c_state = state_slope;
    budget.L_c = std::max(theta_slope, state_slope);

    if (!model.is_infinite_horizon() && !model.terminal_cost_base.empty()) {
        double term_theta = 0.0, term_state = 0.0;
        for (std::size_t s = 0; s < model.n_states; ++s) {
            double sum = 0.0;
            for (std::size_t j = 0; j < model.terminal_cost_dirs.size(); ++j)
                sum += std::abs(model.terminal_cost_dirs[j][s]);
            term_theta = std::max(term_theta, sum);
        }
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            const std::size_t s = order[i], t = order[i + 1];
            const double d = l1_distance(model.state_coords[s], model.state_coords[t]);
            if (d <= 0.0) continue;
            for (const auto& vtx : vertices) {
                double cs = model.terminal_cost_base[s], ct = model.terminal_cost_base[t];
                for (std::size_t j = 0; j < model.terminal_cost_dirs.size(); ++j) {
                    cs += vtx[j] * model.terminal_cost_dirs[j][s];
                    ct += vtx[j] * model.terminal_cost_dirs[j][t];
                }
                term_state = std::max(term_state, std::abs(cs - ct) / d);
            }
        }
        budget.L_c_terminal = std::max(term_theta, term_state);
    }

    // Probe lower estimate of L_rho: push random unit-Lipschitz value tables
    // through the risk transition at random parameter pairs and take the
    // worst d_Theta-normalized change.
    Rng rng(seed);
    double worst_ratio = 0.0;
    for (int vp = 0; vp < value_probes; ++vp) {
        std::vector<double> v(model.n_states);
        for (auto& x : v) x = rng.uniform(-1.0, 1.0);
        const double norm = state_lipschitz_norm(model, v);
        if (norm <= 0.0) continue;
        for (auto& x : v) x /= norm;

        for (int tp = 0; tp < theta_probes; ++tp) {
            std::vector<double> th1(model.param_dim), th2(model.param_dim);
            for (auto& x : th1) x = rng.uniform01();
            for (auto& x : th2) x = rng.uniform01();
            const double d = l1_distance(th1, th2);
            if (d <= 1e-12) continue;
            const ConcreteMDP m1 = instantiate(model, th1);
            const ConcreteMDP m2 = instantiate(model, th2);
            for (std::size_t s = 0; s < model.n_states; ++s)
                for (std::size_t a = 0; a < model.n_actions; ++a) {
                    if (!model.action_mask[s][a]) continue;
                    const double s1 = risk_transition(spec, th1, v, m1.q[s][a]);
                    const double s2 = risk_transition(spec, th2, v, m2.q[s][a]);
                    worst_ratio = std::max(worst_ratio, std::abs(s1 - s2) / d);
                }
        }
    }
    budget.L_rho = worst_ratio;
    budget.l_rho_estimated = true;
    return budget;
}

LipschitzBudget estimate_constants(const ParametricMDP& model) {
    return estimate_constants(model, model.risk);
}

SweepReport sweep(const ParametricMDP& model, const RiskSpec& spec, const ThetaGrid& grid,
                  double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
    SweepReport report;
    report.grid = grid;
    report.epsilon = epsilon;
    report.values.reserve(grid.size());
    report.policies.reserve(grid.size());

    for (const auto& theta : grid.points) {
        try {
            if (model.is_infinite_horizon()) {
                InfiniteSolution sol = solve_infinite(model, spec, theta, epsilon);
                report.values.push_back(std::move(sol.value));
                report.policies.push_back(std::move(sol.policy));
            } else {
                FiniteSolution sol = solve_finite(model, spec, theta);
                report.values.push_back(std::move(sol.values.front()));
                report.policies.push_back(std::move(sol.policies.front()));
            }
        } catch (const SolverError& e) {
            throw SolverError("sweep failed at theta = " + theta_field(theta) + ": " + e.what(),
                              e.residuals);
        }
    }

    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            PairDelta pd;
            pd.i = i;
            pd.j = j;
            pd.d_theta = l1_distance(grid.points[i], grid.points[j]);
            pd.sup_delta_v = sup_delta(report.values[i].values, report.values[j].values);
            pd.ratio = pd.d_theta > 0.0 ? pd.sup_delta_v / pd.d_theta : 0.0;
            pd.policy_changed = report.policies[i].actions != report.policies[j].actions;
            report.empirical_ratio = std::max(report.empirical_ratio, pd.ratio);
            report.pairs.push_back(pd);
        }

    // one-step grid edges (differ on exactly one axis by one index)
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            std::size_t diff_axes = 0, step = 0;
            for (std::size_t ax = 0; ax < grid.counts.size(); ++ax) {
                const std::size_t a = grid.index_tuples[i][ax], b = grid.index_tuples[j][ax];
                if (a != b) {
                    ++diff_axes;
                    step = a > b ? a - b : b - a;
                }
            }
            if (diff_axes == 1 && step == 1) report.adjacent.emplace_back(i, j);
        }
    return report;
}

SweepReport sweep(const ParametricMDP& model, const ThetaGrid& grid, double epsilon) {
    return sweep(model, model.risk, grid, epsilon);
}

ConformanceResult conformance(const SweepReport& report, double bound) {
    ConformanceResult out;
    out.pass = true;
    out.worst_excess = -std::numeric_limits<double>::infinity();
    for (const auto& pd : report.pairs) {
        const double excess = pd.sup_delta_v - (bound * pd.d_theta + 2.0 * report.epsilon);
        if (excess > out.worst_excess) {
            out.worst_excess = excess;
            out.worst_i = pd.i;
            out.worst_j = pd.j;
        }
        if (excess > 0.0) out.pass = false;
    }
    if (report.pairs.empty()) out.worst_excess = 0.0;
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> policy_stability(const SweepReport& report) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& [i, j] : report.adjacent)
        if (report.policies[i].actions != report.policies[j].actions) edges.emplace_back(i, j);
    return edges;
}

std::string sweep_to_csv(const SweepReport& report) {
    std::ostringstream os;
    os << "theta_i,theta_j,d_theta,sup_delta_v,ratio,bound,slack,policy_changed\n";
    for (const auto& pd : report.pairs) {
        os << theta_field(report.grid.points[pd.i]) << "," << theta_field(report.grid.points[pd.j])
           << "," << fmt17(pd.d_theta) << "," << fmt17(pd.sup_delta_v) << "," << fmt17(pd.ratio)
           << ",";
        if (report.bound) {
            const double slack =
                *report.bound * pd.d_theta + 2.0 * report.epsilon - pd.sup_delta_v;
            os << fmt17(*report.bound) << "," << fmt17(slack);
        } else {
            os << ",";
        }
        os << "," << (pd.policy_changed ? 1 : 0) << "\n";
    }
    return os.str();
}

std::string sweep_to_json(const SweepReport& report) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["epsilon"] = report.epsilon;
    j["empirical_ratio"] = report.empirical_ratio;
    if (report.bound) j["bound"] = *report.bound;
    j["grid"] = ordered_json::array();
    for (const auto& p : report.grid.points) j["grid"].push_back(p);
    j["values"] = ordered_json::array();
    for (const auto& v : report.values) j["values"].push_back(v.values);
    j["policies"] = ordered_json::array();
    for (const auto& p : report.policies) j["policies"].push_back(p.actions);
    j["pairs"] = ordered_json::array();
    for (const auto& pd : report.pairs)
        j["pairs"].push_back(ordered_json{{"i", pd.i},
                                          {"j", pd.j},
                                          {"d_theta", pd.d_theta},
                                          {"sup_delta_v", pd.sup_delta_v},
                                          {"ratio", pd.ratio},
                                          {"policy_changed", pd.policy_changed}});
    auto edges = policy_stability(report);
    j["change_edges"] = ordered_json::array();
    for (const auto& [a, b] : edges) j["change_edges"].push_back(ordered_json::array({a, b}));
    return j.dump(2) + "\n";
}

} // namespace riskmdp
