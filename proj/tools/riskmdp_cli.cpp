// riskmdp: validate / solve / sweep / bound / axioms over parametric
// risk-sensitive MDP models.
//
// Exit codes: 0 ok, 1 invalid model, 2 I/O or usage, 3 solver
// non-convergence, 4 infeasible budget, 5 axiom violations found.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riskmdp/axioms.hpp"
#include "riskmdp/json17.hpp"
#include "riskmdp/model_io.hpp"
#include "riskmdp/sensitivity.hpp"
#include "riskmdp/solver.hpp"
#include "riskmdp/zoo.hpp"

namespace {

using namespace riskmdp;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalidModel = 1;
constexpr int kExitIo = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitAxioms = 5;

std::vector<double> parse_reals(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw IoError(std::string(what) + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw IoError(std::string(what) + ": empty list");
    return out;
}

std::vector<std::size_t> parse_counts(const std::string& text) {
    std::vector<std::size_t> out;
    for (double x : parse_reals(text, "--grid")) {
        if (x < 1) throw IoError("--grid: counts must be >= 1");
        out.push_back(std::size_t(x));
    }
    return out;
}

// NAME[:k=v,...]
ParametricMDP zoo_from_flag(const std::string& flag) {
    const auto colon = flag.find(':');
    const std::string name = flag.substr(0, colon);
    std::map<std::string, std::string> params;
    if (colon != std::string::npos) {
        std::stringstream ss(flag.substr(colon + 1));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw IoError("--zoo parameter '" + kv + "' is not k=v");
            params[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
    }
    return zoo::make(name, params);
}

struct ModelFlags {
    std::string model_path;
    std::string zoo_name;
    std::string risk;   // KIND[:p=...]
    std::string lambda; // "intercept,c1,..."

    ParametricMDP load() const {
        if (model_path.empty() == zoo_name.empty())
            throw IoError("provide exactly one of --model and --zoo");
        ParametricMDP m =
            model_path.empty() ? zoo_from_flag(zoo_name) : load_model(model_path);
        if (!risk.empty()) {
            const auto colon = risk.find(':');
            m.risk.kind = risk_kind_from_string(risk.substr(0, colon));
            m.risk.p = 1.0;
            if (colon != std::string::npos) {
                const std::string opt = risk.substr(colon + 1);
                if (opt.rfind("p=", 0) != 0)
                    throw IoError("--risk option '" + opt + "' is not p=...");
                m.risk.p = std::stod(opt.substr(2));
            }
            if (lambda.empty()) // a fresh kind resets the map unless one is given
                m.risk.lambda_map = AffineMap::constant(0.0, m.param_dim);
        }
        if (!lambda.empty()) {
            const auto vals = parse_reals(lambda, "--lambda");
            m.risk.lambda_map.intercept = vals.front();
            m.risk.lambda_map.coeffs.assign(vals.begin() + 1, vals.end());
        }
        return m;
    }
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
    cmd->add_option("--model", flags.model_path, "model JSON file");
    cmd->add_option("--zoo", flags.zoo_name, "zoo recipe NAME[:k=v,...]");
    cmd->add_option("--risk", flags.risk, "risk kind KIND[:p=...] overriding the model's");
    cmd->add_option("--lambda", flags.lambda, "affine lambda map 'intercept,c1,...'");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + out_path + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + out_path + "' failed");
}

int cmd_validate(const ModelFlags& flags, bool monotone) {
    const ParametricMDP model = flags.load();
    const auto diags = validate(model);
    for (const auto& d : diags)
        std::cout << d.path << ": " << d.message << " (magnitude " << format17(d.magnitude)
                  << ")\n";
    if (diags.empty()) std::cout << "model ok: no diagnostics\n";

    if (monotone && diags.empty()) {
        for (const auto& vertex : box_vertices(model.param_dim)) {
            const auto report = check_monotone(model, vertex);
            std::cout << "monotone at theta=(";
            for (std::size_t j = 0; j < vertex.size(); ++j)
                std::cout << (j ? "," : "") << vertex[j];
            std::cout << "): fosd=" << (report.fosd_ok ? "ok" : "VIOLATED")
                      << " cost=" << (report.cost_mono_ok ? "ok" : "VIOLATED")
                      << " mask=" << (report.mask_nesting_ok ? "ok" : "VIOLATED") << "\n";
        }
    }
    return diags.empty() ? kExitOk : kExitInvalidModel;
}

int cmd_solve(const ModelFlags& flags, const std::string& theta_flag, double eps,
              const std::string& out_path) {
    const ParametricMDP model = flags.load();
    const auto theta = parse_reals(theta_flag, "--theta");

    ordered_json j;
    j["theta"] = theta;
    if (model.is_infinite_horizon()) {
        const auto sol = solve_infinite(model, theta, eps);
        j["values"] = sol.value.values;
        j["policy"] = sol.policy.actions;
        j["stats"] = ordered_json{{"iterations", sol.stats.iterations},
                                  {"final_residual", sol.stats.final_residual},
                                  {"error_bound", sol.stats.error_bound}};
    } else {
        const auto sol = solve_finite(model, theta);
        j["values"] = sol.values.front().values;
        j["policy"] = sol.policies.front().actions;
        j["horizon"] = *model.horizon;
        ordered_json stages = ordered_json::array();
        for (const auto& vt : sol.values) stages.push_back(vt.values);
        j["value_stages"] = stages;
        j["stats"] = ordered_json{{"iterations", *model.horizon},
                                  {"final_residual", 0.0},
                                  {"error_bound", 0.0}};
    }
    emit(dump_json17(j), out_path);
    return kExitOk;
}

int cmd_sweep(const ModelFlags& flags, const std::string& grid_flag, double eps,
              const std::string& out_path, const std::string& format) {
    const ParametricMDP model = flags.load();
    auto report = sweep(model, make_grid(parse_counts(grid_flag)), eps);

    std::optional<double> bound;
    const LipschitzBudget budget = estimate_constants(model);
    if (model.is_infinite_horizon()) {
        if (budget.feasible_infinite()) bound = lipschitz_bound_infinite(budget);
    } else {
        const int T = *model.horizon;
        std::vector<double> lc(std::size_t(T), budget.L_c);
        lc.push_back(budget.L_c_terminal);
        bound = lipschitz_bound_finite(lc, budget.L_D,
                                       std::vector<double>(std::size_t(T), budget.L_rho), T)
                    .back();
    }
    report.bound = bound;

    emit(format == "csv" ? sweep_to_csv(report) : sweep_to_json(report), out_path);

    ordered_json summary;
    summary["empirical_ratio"] = report.empirical_ratio;
    if (bound) {
        summary["bound"] = *bound;
        const auto conf = conformance(report, *bound);
        summary["conformance"] = conf.pass ? "pass" : "fail";
        summary["worst_excess"] = conf.worst_excess;
    } else {
        summary["bound"] = nullptr;
        summary["conformance"] = "skipped (infeasible estimated budget)";
    }
    ordered_json edges = ordered_json::array();
    for (const auto& [i, j2] : policy_stability(report))
        edges.push_back(ordered_json::array({i, j2}));
    summary["change_edges"] = edges;
    std::cout << dump_json17(summary);
    return kExitOk;
}

int cmd_bound(const ModelFlags& flags, bool estimate, bool finite, int T,
              const std::string& lc_flag, double ld, const std::string& lrho_flag,
              double gamma) {
    LipschitzBudget budget;
    std::vector<double> lc_list, lrho_list;
    if (estimate) {
        const ParametricMDP model = flags.load();
        budget = estimate_constants(model);
        std::cout << "L_c=" << format17(budget.L_c) << " (theta " << format17(budget.L_c_theta)
                  << ", state " << format17(budget.L_c_state) << ")"
                  << " L_D=" << format17(budget.L_D) << " L_rho=" << format17(budget.L_rho)
                  << (budget.l_rho_estimated ? " (probe lower estimate)" : "")
                  << " gamma_bar=" << format17(budget.gamma_bar) << "\n";
        if (finite) {
            lc_list.assign(std::size_t(T) + 1, budget.L_c);
            if (!model.is_infinite_horizon()) lc_list.back() = budget.L_c_terminal;
            lrho_list.assign(std::size_t(T), budget.L_rho);
        }
    } else {
        if (lc_flag.empty()) throw IoError("bound needs --Lc ... --gamma or --estimate");
        lc_list = parse_reals(lc_flag, "--Lc");
        budget.L_c = lc_list.front();
        budget.L_D = ld;
        lrho_list = parse_reals(lrho_flag.empty() ? "0" : lrho_flag, "--Lrho");
        budget.L_rho = lrho_list.front();
        budget.gamma_bar = gamma;
    }

    if (finite) {
        if (T < 1) throw IoError("--finite requires --T >= 1");
        if (lc_list.size() == 1) lc_list.assign(std::size_t(T) + 1, lc_list.front());
        if (lrho_list.size() == 1) lrho_list.assign(std::size_t(T), lrho_list.front());
        const auto sched = lipschitz_bound_finite(lc_list, budget.L_D, lrho_list, T);
        std::cout << "[";
        for (std::size_t i = 0; i < sched.size(); ++i)
            std::cout << (i ? ", " : "") << format17(sched[i]);
        std::cout << "]\n";
        return kExitOk;
    }
    std::cout << format17(lipschitz_bound_infinite(budget)) << "\n";
    return kExitOk;
}

int cmd_axioms(const std::string& risk_flag, const std::string& lambda_flag,
               const std::string& theta_flag, int trials, std::uint64_t seed) {
    RiskSpec spec;
    const auto colon = risk_flag.find(':');
    spec.kind = risk_kind_from_string(risk_flag.substr(0, colon));
    spec.p = 1.0;
    if (colon != std::string::npos) {
        const std::string opt = risk_flag.substr(colon + 1);
        if (opt.rfind("p=", 0) != 0) throw IoError("--risk option '" + opt + "' is not p=...");
        spec.p = std::stod(opt.substr(2));
    }
    const auto vals = parse_reals(lambda_flag.empty() ? "0" : lambda_flag, "--lambda");
    spec.lambda_map.intercept = vals.front();
    spec.lambda_map.coeffs.assign(vals.begin() + 1, vals.end());

    std::vector<double> theta(spec.lambda_map.coeffs.size(), 0.0);
    if (!theta_flag.empty()) theta = parse_reals(theta_flag, "--theta");

    const auto report = check_coherence_axioms(spec, theta, trials, seed);
    bool violations = false;
    for (int a = 0; a < 4; ++a) {
        const auto& r = report.results[std::size_t(a)];
        std::cout << to_string(Axiom(a)) << ": " << r.passes << "/" << report.trials
                  << " worst_violation=" << format17(r.worst_violation) << "\n";
        if (r.passes != report.trials) violations = true;
    }
    if (report.result(Axiom::TranslationEquivalence).passes != report.trials)
        std::cout << "translation shift at worst trial: "
                  << format17(report.worst_translation_shift)
                  << " for alpha=" << format17(report.alpha_at_worst_shift) << "\n";
    return violations ? kExitAxioms : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"risk-sensitive parametric MDP solver and sensitivity toolkit"};
    app.require_subcommand(1);

    ModelFlags flags;
    std::string theta_flag, grid_flag, out_path, format = "csv";
    std::string lc_flag, lrho_flag, risk_flag, lambda_flag;
    double eps = 1e-6, ld = 0.0, gamma = 0.0;
    int T = 0, trials = 1000;
    std::uint64_t seed = 20240901;
    bool monotone = false, estimate = false, finite = false;

    auto* validate_cmd = app.add_subcommand("validate", "audit a model's invariants");
    add_model_flags(validate_cmd, flags);
    validate_cmd->add_flag("--monotone", monotone, "also run the monotone-MDP checks");

    auto* solve_cmd = app.add_subcommand("solve", "solve at one parameter point");
    add_model_flags(solve_cmd, flags);
    solve_cmd->add_option("--theta", theta_flag, "parameter point 't1,...'")->required();
    solve_cmd->add_option("--eps", eps, "certified value accuracy");
    solve_cmd->add_option("--out", out_path, "write JSON here instead of stdout");

    auto* sweep_cmd = app.add_subcommand("sweep", "solve across a theta grid and compare");
    add_model_flags(sweep_cmd, flags);
    sweep_cmd->add_option("--grid", grid_flag, "per-axis point counts 'n1,...'")->required();
    sweep_cmd->add_option("--eps", eps, "per-solve accuracy");
    sweep_cmd->add_option("--out", out_path, "report file (summary still on stdout)");
    sweep_cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--seed", seed, "seed for the constant estimator");

    auto* bound_cmd = app.add_subcommand("bound", "Lipschitz perturbation bounds");
    add_model_flags(bound_cmd, flags);
    bound_cmd->add_flag("--estimate", estimate, "estimate the budget from the model");
    bound_cmd->add_flag("--finite", finite, "emit the finite-horizon schedule");
    bound_cmd->add_option("--T", T, "horizon for --finite");
    bound_cmd->add_option("--Lc", lc_flag, "cost constant (comma list with --finite)");
    bound_cmd->add_option("--LD", ld, "admissible-set constant");
    bound_cmd->add_option("--Lrho", lrho_flag, "risk constant (comma list with --finite)");
    bound_cmd->add_option("--gamma", gamma, "discount bound gamma_bar");

    auto* axioms_cmd = app.add_subcommand("axioms", "randomized coherence audit");
    axioms_cmd->add_option("--risk", risk_flag, "risk kind KIND[:p=...]")->required();
    axioms_cmd->add_option("--lambda", lambda_flag, "affine lambda map 'intercept,c1,...'");
    axioms_cmd->add_option("--theta", theta_flag, "parameter point (default zeros)");
    axioms_cmd->add_option("--trials", trials, "number of randomized trials");
    axioms_cmd->add_option("--seed", seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(flags, monotone);
        if (solve_cmd->parsed()) return cmd_solve(flags, theta_flag, eps, out_path);
        if (sweep_cmd->parsed()) return cmd_sweep(flags, grid_flag, eps, out_path, format);
        if (bound_cmd->parsed())
            return cmd_bound(flags, estimate, finite, T, lc_flag, ld, lrho_flag, gamma);
        if (axioms_cmd->parsed())
            return cmd_axioms(risk_flag, lambda_flag, theta_flag, trials, seed);
    } catch (const InfeasibleBudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\nresidual trajectory (tail):";
        const std::size_t n = e.residuals.size();
        for (std::size_t i = n > 10 ? n - 10 : 0; i < n; ++i)
            std::cerr << " " << format17(e.residuals[i]);
        std::cerr << "\n";
        return kExitSolver;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidModel;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
