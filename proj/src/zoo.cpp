#include "riskmdp/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "riskmdp/errors.hpp"
#include "riskmdp/rng.hpp"

namespace riskmdp {
namespace zoo {

namespace {

void finish(ParametricMDP& m, const char* name) {
    const auto diags = validate(m);
    if (!diags.empty())
        throw ModelError(std::string(name) + " recipe produced an invalid model: " +
                         diags.front().path + ": " + diags.front().message);
}

std::vector<std::vector<double>> coords_1d(std::size_t n) {
    std::vector<std::vector<double>> c(n);
    for (std::size_t s = 0; s < n; ++s) c[s] = {double(s)};
    return c;
}

KernelTensor zero_kernel(std::size_t S, std::size_t A) {
    return KernelTensor(S, std::vector<std::vector<double>>(A, std::vector<double>(S, 0.0)));
}

std::vector<CostMatrix> zero_dirs(std::size_t d, std::size_t S, std::size_t A) {
    return std::vector<CostMatrix>(d, CostMatrix(S, std::vector<double>(A, 0.0)));
}

// Move `shift` of each arrival's mass one step up (top bucket keeps its own).
std::vector<double> shift_up(const std::vector<double>& p, double shift) {
    std::vector<double> q(p.size(), 0.0);
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (a + 1 < p.size()) {
            q[a] += (1.0 - shift) * p[a];
            q[a + 1] += shift * p[a];
        } else {
            q[a] += p[a];
        }
    }
    return q;
}

} // namespace

ParametricMDP ev_charging(int levels, int max_rate, double price_dir, double demand_shift) {
    if (levels < 2) throw DomainError("ev_charging needs levels >= 2");
    if (max_rate < 1) throw DomainError("ev_charging needs max_rate >= 1");
    if (demand_shift < 0.0 || demand_shift > 1.0)
        throw DomainError("demand_shift must lie in [0,1]");
    const double price0 = 1.0;
    const double penalty = 1.5;
    if (price0 + std::min(0.0, price_dir) < 0.0)
        throw ModelError("price_dir drives the charge price negative on the box");

    const std::size_t S = std::size_t(levels);
    const std::size_t A = std::size_t(max_rate);
    ParametricMDP m;
    m.n_states = S;
    m.state_coords = coords_1d(S);
    m.n_actions = A;
    m.param_dim = 2;

    // rate admissible only up to the current backlog
    m.action_mask.assign(S, std::vector<bool>(A, false));
    for (std::size_t b = 0; b < S; ++b)
        for (std::size_t r = 0; r < A; ++r) m.action_mask[b][r] = r <= b;

    const std::vector<double> base_arrivals{0.5, 0.3, 0.2};
    const std::vector<double> shifted_arrivals = shift_up(base_arrivals, demand_shift);

    auto kernel_from = [&](const std::vector<double>& arrivals) {
        KernelTensor q = zero_kernel(S, A);
        for (std::size_t b = 0; b < S; ++b)
            for (std::size_t r = 0; r < A; ++r) {
                if (!m.action_mask[b][r]) { // unreachable; keep rows stochastic anyway
                    q[b][r][b] = 1.0;
                    continue;
                }
                for (std::size_t a = 0; a < arrivals.size(); ++a) {
                    const std::size_t next = std::min(S - 1, b - r + a);
                    q[b][r][next] += arrivals[a];
                }
            }
        return q;
    };
    m.kernel_components.push_back(kernel_from(base_arrivals));
    m.kernel_components.push_back(kernel_from(shifted_arrivals));
    m.kernel_weights.intercept = {1.0, 0.0};
    m.kernel_weights.coeffs = {{-1.0, 0.0}, {1.0, 0.0}}; // w = (1 - theta_1, theta_1)

    m.cost_base.assign(S, std::vector<double>(A, 0.0));
    m.cost_dirs = zero_dirs(2, S, A);
    for (std::size_t b = 0; b < S; ++b)
        for (std::size_t r = 0; r < A; ++r) {
            if (!m.action_mask[b][r]) continue;
            m.cost_base[b][r] = price0 * double(r) + penalty * double(b - r);
            m.cost_dirs[0][b][r] = price_dir * double(r);
        }

    m.discount_map = AffineMap::constant(0.9, 2);
    m.risk = RiskSpec{RiskKind::Cvar, 1.0, AffineMap{0.3, {0.0, 0.4}}};
    finish(m, "ev_charging");
    return m;
}

ParametricMDP monotone_chain(int n) {
    if (n < 2) throw DomainError("monotone_chain needs n >= 2");
    const std::size_t S = std::size_t(n);
    const std::size_t A = 2;
    ParametricMDP m;
    m.n_states = S;
    m.state_coords = coords_1d(S);
    m.n_actions = A;
    m.param_dim = 1;
    m.action_mask.assign(S, std::vector<bool>(A, true));

    // Birth-death rows; theta drifts the chain upward by mixing in the
    // second component. up + down <= 1 keeps dominance across states.
    auto chain = [&](double up0, double dn0, double up1, double dn1) {
        KernelTensor q = zero_kernel(S, A);
        const double ups[2] = {up0, up1};
        const double dns[2] = {dn0, dn1};
        for (std::size_t s = 0; s < S; ++s)
            for (std::size_t a = 0; a < A; ++a) {
                double stay = 1.0;
                if (s + 1 < S) {
                    q[s][a][s + 1] = ups[a];
                    stay -= ups[a];
                }
                if (s > 0) {
                    q[s][a][s - 1] = dns[a];
                    stay -= dns[a];
                }
                q[s][a][s] = stay;
            }
        return q;
    };
    m.kernel_components.push_back(chain(0.30, 0.30, 0.15, 0.45)); // base drift
    m.kernel_components.push_back(chain(0.45, 0.15, 0.30, 0.30)); // shifted up
    m.kernel_weights.intercept = {1.0, 0.0};
    m.kernel_weights.coeffs = {{-1.0}, {1.0}};

    // action 1 fights the drift for a surcharge; cost climbs with the state
    m.cost_base.assign(S, std::vector<double>(A, 0.0));
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) m.cost_base[s][a] = double(s) + 0.4 * double(a);
    m.cost_dirs = zero_dirs(1, S, A);

    m.discount_map = AffineMap::constant(0.5, 1);
    m.risk = RiskSpec{RiskKind::Cvar, 1.0, AffineMap::constant(0.3, 1)};
    finish(m, "monotone_chain");
    return m;
}

ParametricMDP random_mdp(std::uint64_t seed, int n_states, int n_actions, int d) {
    if (n_states < 1 || n_actions < 1) throw DomainError("random_mdp needs sizes >= 1");
    if (d < 1 || d > 4) throw DomainError("random_mdp needs 1 <= d <= 4");
    Rng rng(seed);
    const std::size_t S = std::size_t(n_states);
    const std::size_t A = std::size_t(n_actions);
    const std::size_t D = std::size_t(d);
    const std::size_t K = D + 1;

    ParametricMDP m;
    m.n_states = S;
    m.state_coords = coords_1d(S);
    m.n_actions = A;
    m.param_dim = D;
    m.action_mask.assign(S, std::vector<bool>(A, true));

    for (std::size_t k = 0; k < K; ++k) {
        KernelTensor q = zero_kernel(S, A);
        for (std::size_t s = 0; s < S; ++s)
            for (std::size_t a = 0; a < A; ++a) q[s][a] = rng.simplex(S, 0.02);
        m.kernel_components.push_back(std::move(q));
    }
    // w_0 = 1 - sum_j mix*theta_j/d, w_{j+1} = mix*theta_j/d
    const double mix = 0.5;
    m.kernel_weights.intercept.assign(K, 0.0);
    m.kernel_weights.intercept[0] = 1.0;
    m.kernel_weights.coeffs.assign(K, std::vector<double>(D, 0.0));
    for (std::size_t j = 0; j < D; ++j) {
        m.kernel_weights.coeffs[0][j] = -mix / double(D);
        m.kernel_weights.coeffs[j + 1][j] = mix / double(D);
    }

    m.cost_base.assign(S, std::vector<double>(A, 0.0));
    m.cost_dirs = zero_dirs(D, S, A);
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) {
            m.cost_base[s][a] = rng.uniform01();
            double neg = 0.0;
            for (std::size_t j = 0; j < D; ++j) {
                m.cost_dirs[j][s][a] = rng.uniform(-0.5, 0.5) / double(D);
                neg += std::min(0.0, m.cost_dirs[j][s][a]);
            }
            // rescale downward directions so the box minimum stays >= 0
            if (m.cost_base[s][a] + neg < 0.0) {
                const double scale = 0.95 * m.cost_base[s][a] / -neg;
                for (std::size_t j = 0; j < D; ++j)
                    if (m.cost_dirs[j][s][a] < 0.0) m.cost_dirs[j][s][a] *= scale;
            }
        }

    m.discount_map = AffineMap::constant(rng.uniform(0.3, 0.9), D);
    m.risk = RiskSpec{RiskKind::Cvar, 1.0, AffineMap{0.2, std::vector<double>(D, 0.0)}};
    m.risk.lambda_map.coeffs[0] = 0.2;
    finish(m, "random_mdp");
    return m;
}

ParametricMDP single_state() {
    ParametricMDP m;
    m.n_states = 1;
    m.state_coords = {{0.0}};
    m.n_actions = 1;
    m.param_dim = 1;
    m.action_mask = {{true}};
    m.kernel_components = {KernelTensor{{{1.0}}}};
    m.kernel_weights.intercept = {1.0};
    m.kernel_weights.coeffs = {{0.0}};
    m.cost_base = {{1.0}};
    m.cost_dirs = zero_dirs(1, 1, 1);
    m.discount_map = AffineMap::constant(0.5, 1);
    m.risk = RiskSpec::expectation(1);
    finish(m, "single_state");
    return m;
}

ParametricMDP two_cycle() {
    ParametricMDP m;
    m.n_states = 2;
    m.state_coords = coords_1d(2);
    m.n_actions = 1;
    m.param_dim = 1;
    m.action_mask = {{true}, {true}};
    KernelTensor q = zero_kernel(2, 1);
    q[0][0] = {0.0, 1.0};
    q[1][0] = {1.0, 0.0};
    m.kernel_components = {std::move(q)};
    m.kernel_weights.intercept = {1.0};
    m.kernel_weights.coeffs = {{0.0}};
    m.cost_base = {{1.0}, {3.0}};
    m.cost_dirs = zero_dirs(1, 2, 1);
    m.discount_map = AffineMap::constant(0.5, 1);
    m.risk = RiskSpec::expectation(1);
    finish(m, "two_cycle");
    return m;
}

ParametricMDP scalar_affine() {
    ParametricMDP m = single_state();
    m.cost_dirs[0][0][0] = 1.0; // c(theta) = 1 + theta
    finish(m, "scalar_affine");
    return m;
}

ParametricMDP pref_reversal() {
    // s0 chooses between a mean-cheap lottery over terminal costs {0, 10}
    // and a deterministic surcharge of 7; cvar flips the preference once
    // lambda(theta) crosses 2/7.
    ParametricMDP m;
    m.n_states = 3;
    m.state_coords = coords_1d(3);
    m.n_actions = 2;
    m.param_dim = 1;
    m.action_mask = {{true, true}, {true, false}, {true, false}};
    KernelTensor q = zero_kernel(3, 2);
    q[0][0] = {0.0, 0.5, 0.5}; // lottery
    q[0][1] = {0.0, 1.0, 0.0}; // safe
    q[1][0] = {0.0, 1.0, 0.0};
    q[1][1] = {0.0, 1.0, 0.0};
    q[2][0] = {0.0, 0.0, 1.0};
    q[2][1] = {0.0, 0.0, 1.0};
    m.kernel_components = {std::move(q)};
    m.kernel_weights.intercept = {1.0};
    m.kernel_weights.coeffs = {{0.0}};
    m.cost_base = {{0.0, 7.0}, {0.0, 0.0}, {0.0, 0.0}};
    m.cost_dirs = zero_dirs(1, 3, 2);
    m.terminal_cost_base = {0.0, 0.0, 10.0};
    m.terminal_cost_dirs = {{0.0, 0.0, 0.0}};
    m.discount_map = AffineMap::constant(0.5, 1);
    m.horizon = 1;
    // lambda = theta, nudged below 1 so the top vertex stays admissible
    m.risk = RiskSpec{RiskKind::Cvar, 1.0, AffineMap{0.0, {1.0 - 1e-9}}};
    finish(m, "pref_reversal");
    return m;
}

ParametricMDP constant_model() {
    ParametricMDP m;
    m.n_states = 2;
    m.state_coords = coords_1d(2);
    m.n_actions = 1;
    m.param_dim = 1;
    m.action_mask = {{true}, {true}};
    KernelTensor q = zero_kernel(2, 1);
    q[0][0] = {0.5, 0.5};
    q[1][0] = {0.5, 0.5};
    m.kernel_components = {std::move(q)};
    m.kernel_weights.intercept = {1.0};
    m.kernel_weights.coeffs = {{0.0}};
    m.cost_base = {{1.0}, {2.0}};
    m.cost_dirs = zero_dirs(1, 2, 1);
    m.discount_map = AffineMap::constant(0.6, 1);
    m.risk = RiskSpec{RiskKind::Cvar, 1.0, AffineMap::constant(0.3, 1)};
    finish(m, "constant");
    return m;
}

namespace {

double param_or(const std::map<std::string, std::string>& params, const std::string& key,
                double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw DomainError("recipe parameter " + key + "='" + it->second + "' is not a number");
    }
}

void reject_unknown(const std::map<std::string, std::string>& params,
                    std::initializer_list<const char*> known) {
    for (const auto& [key, value] : params) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw DomainError("unknown recipe parameter '" + key + "'");
    }
}

} // namespace

ParametricMDP make(const std::string& name, const std::map<std::string, std::string>& params) {
    if (name == "ev_charging") {
        reject_unknown(params, {"levels", "max_rate", "price_dir", "demand_shift"});
        return ev_charging(int(param_or(params, "levels", 3)),
                           int(param_or(params, "max_rate", 2)),
                           param_or(params, "price_dir", 0.5),
                           param_or(params, "demand_shift", 0.4));
    }
    if (name == "monotone_chain") {
        reject_unknown(params, {"n"});
        return monotone_chain(int(param_or(params, "n", 3)));
    }
    if (name == "random_mdp") {
        reject_unknown(params, {"seed", "n_states", "n_actions", "d"});
        return random_mdp(std::uint64_t(param_or(params, "seed", 1)),
                          int(param_or(params, "n_states", 4)),
                          int(param_or(params, "n_actions", 2)),
                          int(param_or(params, "d", 1)));
    }
    if (name == "single_state") {
        reject_unknown(params, {});
        return single_state();
    }
    if (name == "two_cycle") {
        reject_unknown(params, {});
        return two_cycle();
    }
    if (name == "scalar_affine") {
        reject_unknown(params, {});
        return scalar_affine();
    }
    if (name == "pref_reversal") {
        reject_unknown(params, {});
        return pref_reversal();
    }
    if (name == "constant") {
        reject_unknown(params, {});
        return constant_model();
    }
    throw DomainError("unknown zoo recipe '" + name + "'");
}

std::vector<std::string> recipe_names() {
    return {"ev_charging", "monotone_chain", "random_mdp", "single_state",
            "two_cycle",   "scalar_affine",  "pref_reversal", "constant"};
}

std::vector<std::pair<std::string, ParametricMDP>> shipped_models() {
    std::vector<std::pair<std::string, ParametricMDP>> out;
    out.emplace_back("ev_charging", ev_charging());
    out.emplace_back("monotone_chain", monotone_chain());
    out.emplace_back("random_mdp", random_mdp(1, 4, 2, 1));
    out.emplace_back("single_state", single_state());
    out.emplace_back("two_cycle", two_cycle());
    out.emplace_back("scalar_affine", scalar_affine());
    out.emplace_back("pref_reversal", pref_reversal());
    out.emplace_back("constant", constant_model());
    return out;
}

} // namespace zoo
} // namespace riskmdp
