#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "riskmdp/sensitivity.hpp"
#include "riskmdp/zoo.hpp"
#include "support.hpp"

using namespace riskmdp;

TEST_CASE("theta grids") {
    auto g = make_grid({3});
    REQUIRE(g.size() == 3);
    CHECK(g.points[0] == std::vector<double>{0.0});
    CHECK(g.points[1] == std::vector<double>{0.5});
    CHECK(g.points[2] == std::vector<double>{1.0});
    CHECK(g.spacing[0] == doctest::Approx(0.5));

    auto g2 = make_grid({2, 3});
    CHECK(g2.size() == 6);
    CHECK(g2.points.front() == std::vector<double>{0.0, 0.0});
    CHECK(g2.points.back() == std::vector<double>{1.0, 1.0});
    // lexicographic order and distinct points
    for (std::size_t i = 0; i + 1 < g2.size(); ++i) CHECK(g2.points[i] < g2.points[i + 1]);

    CHECK_THROWS_AS(make_grid({}), DomainError);
    CHECK_THROWS_AS(make_grid({0}), DomainError);
}

TEST_CASE("finite-horizon Lipschitz recursion") {
    CHECK(lipschitz_bound_finite({1.0, 1.0}, 0.0, {0.0}, 1) == std::vector<double>{1.0, 2.0});

    auto zero = lipschitz_bound_finite({0.0, 0.0, 0.0}, 0.4, {0.2, 0.2}, 2);
    for (double x : zero) CHECK(x == 0.0);

    auto sched = lipschitz_bound_finite({1.0, 1.0, 1.0}, 0.1, {0.1, 0.1}, 2);
    REQUIRE(sched.size() == 3);
    CHECK(sched[0] == doctest::Approx(1.0));
    CHECK(sched[1] == doctest::Approx(2.31).epsilon(1e-12));
    CHECK(sched[2] == doctest::Approx(3.8951).epsilon(1e-12));

    CHECK_THROWS_AS(lipschitz_bound_finite({1.0}, 0.0, {0.0}, 1), DomainError);
    CHECK_THROWS_AS(lipschitz_bound_finite({1.0, -1.0}, 0.0, {0.0}, 1), DomainError);
}

TEST_CASE("infinite-horizon Lipschitz constant") {
    CHECK(lipschitz_bound_infinite({.L_c = 1.0, .gamma_bar = 0.9}) ==
          doctest::Approx(10.0).epsilon(1e-12));
    CHECK(lipschitz_bound_infinite({.L_c = 2.0, .L_D = 0.1, .L_rho = 0.1, .gamma_bar = 0.5}) ==
          doctest::Approx(2.2 / 0.395).epsilon(1e-12));
    CHECK_THROWS_AS(lipschitz_bound_infinite({.L_c = 1.0, .L_rho = 0.2, .gamma_bar = 0.9}),
                    InfeasibleBudgetError);
    try {
        lipschitz_bound_infinite({.L_c = 1.0, .L_rho = 0.2, .gamma_bar = 0.9});
    } catch (const InfeasibleBudgetError& e) {
        CHECK(std::string(e.what()).find("1/gamma_bar") != std::string::npos);
    }
}

TEST_CASE("finite recursion with the discount factor is the oracle of the closed form") {
    Rng rng(13);
    for (int rep = 0; rep < 100; ++rep) {
        LipschitzBudget b;
        b.L_c = rng.uniform(0.0, 3.0);
        b.L_D = rng.uniform(0.0, 0.3);
        b.L_rho = rng.uniform(0.0, 0.5);
        // keep gamma_bar*(1+L_rho)(1+L_D) <= 0.9 so the T = 200 tail is dead
        b.gamma_bar = rng.uniform(0.1, 0.9) / ((1.0 + b.L_rho) * (1.0 + b.L_D));
        const double closed = lipschitz_bound_infinite(b);
        const int T = 200;
        auto sched = lipschitz_bound_finite(std::vector<double>(T + 1, b.L_c), b.L_D,
                                            std::vector<double>(T, b.L_rho), T, b.gamma_bar);
        CHECK(std::abs(sched.back() - closed) <= 1e-6 * std::max(1.0, std::abs(closed)));
    }
}

TEST_CASE("estimate_constants on the canonical instances") {
    auto constant = estimate_constants(zoo::constant_model());
    CHECK(constant.L_c_theta == 0.0); // theta has no effect on costs
    CHECK(constant.L_rho == 0.0);
    CHECK(constant.L_D == 0.0);
    CHECK(constant.l_rho_estimated);

    auto affine = estimate_constants(zoo::scalar_affine());
    CHECK(affine.L_c == doctest::Approx(1.0));
    CHECK(affine.L_rho == 0.0);
    CHECK(affine.gamma_bar == doctest::Approx(0.5));

    // kernel mixture with identical components: sigma never moves
    auto m = zoo::monotone_chain(3);
    m.kernel_components[1] = m.kernel_components[0];
    auto frozen = estimate_constants(m);
    CHECK(frozen.L_rho == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sweep on the constant model is flat") {
    const double eps = 1e-8;
    auto report = sweep(zoo::constant_model(), make_grid({5}), eps);
    CHECK(report.values.size() == 5);
    for (const auto& pd : report.pairs) CHECK(pd.sup_delta_v <= 2.0 * eps);
    CHECK(conformance(report, 1.0).pass);
    CHECK(policy_stability(report).empty());
}

TEST_CASE("sweep on the scalar affine model: exact ratio 2 and bound 2") {
    const double eps = 1e-9;
    auto model = zoo::scalar_affine();
    auto report = sweep(model, make_grid({3}), eps);
    REQUIRE(report.values.size() == 3);
    CHECK(report.values[0].values[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(report.values[1].values[0] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(report.values[2].values[0] == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(report.empirical_ratio == doctest::Approx(2.0).epsilon(1e-6));

    const auto budget = estimate_constants(model);
    const double bound = lipschitz_bound_infinite(budget);
    CHECK(bound == doctest::Approx(2.0).epsilon(1e-12));
    auto conf = conformance(report, bound);
    CHECK(conf.pass);
    CHECK(conf.worst_excess <= 2.0 * eps);

    // a zero bound on a theta-sensitive model must fail and name a pair
    auto zero = conformance(report, 0.0);
    CHECK(!zero.pass);
    CHECK(zero.worst_excess > 0.9);
}

TEST_CASE("cvar level sweep on the EV model is monotone in theta_2") {
    auto model = zoo::ev_charging();
    auto grid = make_grid({1, 5}); // freeze the kernel axis, sweep the risk axis
    auto report = sweep(model, grid, 1e-8);
    for (std::size_t i = 0; i + 1 < report.values.size(); ++i)
        for (std::size_t s = 0; s < report.values[i].values.size(); ++s)
            CHECK(report.values[i].values[s] <= report.values[i + 1].values[s] + 2e-8);
}

TEST_CASE("policy stability on the preference-reversal sweep") {
    auto model = zoo::pref_reversal();

    auto coarse = sweep(model, make_grid({5}), 1e-9); // spacing 1/4
    auto coarse_edges = policy_stability(coarse);
    REQUIRE(coarse_edges.size() == 1);
    // lambda* = 2/7 ~ 0.2857 lies inside the change edge
    const auto [ci, cj] = coarse_edges.front();
    CHECK(coarse.grid.points[ci][0] <= 2.0 / 7.0);
    CHECK(coarse.grid.points[cj][0] >= 2.0 / 7.0);

    auto fine = sweep(model, make_grid({9}), 1e-9); // spacing 1/8
    auto fine_edges = policy_stability(fine);
    REQUIRE(fine_edges.size() == 1);
    const auto [fi, fj] = fine_edges.front();
    const double coarse_len = coarse.grid.points[cj][0] - coarse.grid.points[ci][0];
    const double fine_len = fine.grid.points[fj][0] - fine.grid.points[fi][0];
    CHECK(fine_len == doctest::Approx(0.5 * coarse_len));
    CHECK(fine.grid.points[fi][0] <= 2.0 / 7.0);
    CHECK(fine.grid.points[fj][0] >= 2.0 / 7.0);

    // deterministic across repeat runs
    auto again = sweep(model, make_grid({5}), 1e-9);
    CHECK(policy_stability(again) == coarse_edges);
}

TEST_CASE("sweep reports serialize") {
    auto model = zoo::scalar_affine();
    auto report = sweep(model, make_grid({3}), 1e-9);
    report.bound = 2.0;

    const auto csv = sweep_to_csv(report);
    CHECK(csv.find("theta_i,theta_j,d_theta,sup_delta_v,ratio,bound,slack,policy_changed") == 0);
    // 3 pairs -> header + 3 rows
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find("0.5") != std::string::npos);

    const auto json = sweep_to_json(report);
    CHECK(json.find("\"empirical_ratio\"") != std::string::npos);
    CHECK(json.find("\"change_edges\"") != std::string::npos);
    CHECK(sweep_to_csv(report) == csv); // byte-stable
}

TEST_CASE("refinement shrinks the empirical modulus on shipped models") {
    for (const auto& [name, model] : zoo::shipped_models()) {
        const double eps = 1e-6;
        std::vector<std::size_t> counts_h(model.param_dim, 5);  // spacing 1/4
        std::vector<std::size_t> counts_h2(model.param_dim, 9); // spacing 1/8
        auto coarse = sweep(model, make_grid(counts_h), eps);
        auto fine = sweep(model, make_grid(counts_h2), eps);
        auto max_adjacent = [](const SweepReport& r) {
            double worst = 0.0;
            for (const auto& [i, j] : r.adjacent)
                for (const auto& pd : r.pairs)
                    if (pd.i == i && pd.j == j) worst = std::max(worst, pd.sup_delta_v);
            return worst;
        };
        CHECK(max_adjacent(fine) <= max_adjacent(coarse) + 4.0 * eps);
    }
}
