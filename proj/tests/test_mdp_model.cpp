#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "riskmdp/mdp.hpp"
#include "riskmdp/model_io.hpp"
#include "riskmdp/zoo.hpp"
#include "support.hpp"

using namespace riskmdp;

TEST_CASE("instantiate hits the mixture vertices exactly") {
    auto m = zoo::monotone_chain(3); // K = 2, w = (1-theta, theta)
    auto at0 = instantiate(m, {0.0});
    auto at1 = instantiate(m, {1.0});
    for (std::size_t s = 0; s < m.n_states; ++s)
        for (std::size_t a = 0; a < m.n_actions; ++a)
            for (std::size_t t = 0; t < m.n_states; ++t) {
                CHECK(at0.q[s][a][t] == m.kernel_components[0][s][a][t]);
                CHECK(at1.q[s][a][t] == m.kernel_components[1][s][a][t]);
            }

    auto mid = instantiate(m, {0.5});
    for (std::size_t s = 0; s < m.n_states; ++s)
        for (std::size_t a = 0; a < m.n_actions; ++a) {
            double total = 0.0;
            for (std::size_t t = 0; t < m.n_states; ++t) {
                CHECK(mid.q[s][a][t] == doctest::Approx(0.5 * m.kernel_components[0][s][a][t] +
                                                        0.5 * m.kernel_components[1][s][a][t])
                                            .epsilon(1e-14));
                total += mid.q[s][a][t];
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }

    CHECK_THROWS_AS(instantiate(m, {1.5}), ModelError);
    CHECK_THROWS_AS(instantiate(m, {0.5, 0.5}), ModelError);
}

TEST_CASE("instantiate is affine in theta componentwise") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = zoo::random_mdp(100 + trial, 3, 2, 2);
        std::vector<double> th1(2), th2(2), mid(2);
        for (std::size_t j = 0; j < 2; ++j) {
            th1[j] = rng.uniform01();
            th2[j] = rng.uniform01();
            mid[j] = 0.5 * (th1[j] + th2[j]);
        }
        auto c1 = instantiate(m, th1);
        auto c2 = instantiate(m, th2);
        auto cm = instantiate(m, mid);
        for (std::size_t s = 0; s < m.n_states; ++s)
            for (std::size_t a = 0; a < m.n_actions; ++a) {
                CHECK(std::abs(cm.c[s][a] - 0.5 * (c1.c[s][a] + c2.c[s][a])) <= 1e-12);
                for (std::size_t t = 0; t < m.n_states; ++t)
                    CHECK(std::abs(cm.q[s][a][t] - 0.5 * (c1.q[s][a][t] + c2.q[s][a][t])) <=
                          1e-12);
            }
        CHECK(std::abs(cm.gamma - 0.5 * (c1.gamma + c2.gamma)) <= 1e-12);
    }
}

TEST_CASE("validate reports named diagnostics") {
    CHECK(validate(zoo::monotone_chain(3)).empty());
    CHECK(validate(zoo::ev_charging()).empty());

    SUBCASE("discount reaching 1 at a vertex") {
        auto m = zoo::single_state();
        m.discount_map = AffineMap{0.5, {0.5}}; // gamma(1) = 1
        auto diags = validate(m);
        REQUIRE(!diags.empty());
        CHECK(diags.front().path == "/discount");
        CHECK(diags.front().message.find("gamma_bar < 1") != std::string::npos);
    }
    SUBCASE("kernel row deficit is located and measured") {
        auto m = zoo::monotone_chain(3);
        m.kernel_components[1][2][1][1] -= 0.1;
        auto diags = validate(m);
        REQUIRE(!diags.empty());
        CHECK(diags.front().path == "/kernel_components/1/2/1");
        CHECK(diags.front().magnitude == doctest::Approx(0.1).epsilon(1e-9));
    }
    SUBCASE("state without admissible actions") {
        auto m = zoo::monotone_chain(2);
        m.action_mask[1] = {false, false};
        auto diags = validate(m);
        REQUIRE(!diags.empty());
        CHECK(diags.front().path == "/action_mask/1");
    }
    SUBCASE("cost dipping negative inside the box") {
        auto m = zoo::single_state();
        m.cost_dirs[0][0][0] = -2.0; // c(1) = -1
        auto diags = validate(m);
        REQUIRE(!diags.empty());
        CHECK(diags.front().path == "/cost_base/0/0");
    }
    SUBCASE("weights leaving the simplex") {
        auto m = zoo::monotone_chain(3);
        m.kernel_weights.coeffs = {{-1.5}, {1.5}}; // w_0(1) = -0.5
        auto diags = validate(m);
        REQUIRE(!diags.empty());
        CHECK(diags.front().path.find("/kernel_weights") == 0);
    }
}

TEST_CASE("check_monotone accepts the monotone zoo and rejects broken variants") {
    for (const auto& theta : box_vertices(1)) {
        auto report = check_monotone(zoo::monotone_chain(4), theta);
        CHECK(report.all_ok());
        CHECK(report.mask_direction == 0); // full mask: constant chain
    }
    for (const auto& theta : box_vertices(2)) {
        auto report = check_monotone(zoo::ev_charging(), theta);
        CHECK(report.all_ok());
        CHECK(report.mask_direction == +1); // rate <= backlog grows with the state
    }

    SUBCASE("identical rows dominate reflexively") {
        auto m = zoo::constant_model();
        auto report = check_monotone(m, {0.3});
        CHECK(report.fosd_ok);
    }
    SUBCASE("cost inversion is reported with its triple") {
        auto m = zoo::monotone_chain(3);
        m.cost_base[0][0] = 9.0; // low state now dearer than high state
        auto report = check_monotone(m, {0.0});
        CHECK(!report.cost_mono_ok);
        CHECK(report.cost_violation[0] == 0);
        CHECK(report.cost_violation[2] == 0);
    }
    SUBCASE("FOSD violation is reported") {
        auto m = zoo::monotone_chain(3);
        // make the top state jump to the bottom: tails collapse
        for (auto& comp : m.kernel_components) {
            comp[2][0] = {1.0, 0.0, 0.0};
        }
        auto report = check_monotone(m, {0.0});
        CHECK(!report.fosd_ok);
    }
    SUBCASE("tied coordinates are rejected") {
        auto m = zoo::monotone_chain(3);
        m.state_coords[1][0] = m.state_coords[0][0];
        CHECK_THROWS_AS(check_monotone(m, {0.0}), DomainError);
    }
}

TEST_CASE("check_monotone FOSD matches the brute-force dominance audit") {
    for (int seed = 0; seed < 15; ++seed) {
        auto m = zoo::random_mdp(1000 + seed, 4, 2, 1);
        const std::vector<double> theta{0.5};
        const bool brute = testsupport::brute_force_fosd(m, theta);
        CHECK(check_monotone(m, theta).fosd_ok == brute);
    }
    // and twice on the same input gives the same answer
    auto m = zoo::ev_charging();
    auto r1 = check_monotone(m, {0.5, 0.5});
    auto r2 = check_monotone(m, {0.5, 0.5});
    CHECK(r1.fosd_ok == r2.fosd_ok);
    CHECK(r1.mask_direction == r2.mask_direction);
}

TEST_CASE("model JSON round trip is exact") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "riskmdp_io_test";
    fs::create_directories(dir);

    for (const auto& [name, model] : zoo::shipped_models()) {
        const auto path = (dir / (name + ".json")).string();
        save_model(model, path);
        auto loaded = load_model(path);

        CHECK(loaded.n_states == model.n_states);
        CHECK(loaded.n_actions == model.n_actions);
        CHECK(loaded.param_dim == model.param_dim);
        CHECK(loaded.state_coords == model.state_coords);
        CHECK(loaded.action_mask == model.action_mask);
        CHECK(loaded.kernel_components == model.kernel_components);
        CHECK(loaded.kernel_weights.intercept == model.kernel_weights.intercept);
        CHECK(loaded.kernel_weights.coeffs == model.kernel_weights.coeffs);
        CHECK(loaded.cost_base == model.cost_base);
        CHECK(loaded.cost_dirs == model.cost_dirs);
        CHECK(loaded.terminal_cost_base == model.terminal_cost_base);
        CHECK(loaded.terminal_cost_dirs == model.terminal_cost_dirs);
        CHECK(loaded.discount_map.intercept == model.discount_map.intercept);
        CHECK(loaded.discount_map.coeffs == model.discount_map.coeffs);
        CHECK(loaded.horizon == model.horizon);
        CHECK(loaded.risk.kind == model.risk.kind);
        CHECK(loaded.risk.p == model.risk.p);
        CHECK(loaded.risk.lambda_map.intercept == model.risk.lambda_map.intercept);
        CHECK(loaded.risk.lambda_map.coeffs == model.risk.lambda_map.coeffs);

        // byte-identical re-save
        CHECK(model_to_json(loaded) == model_to_json(model));
    }
}

TEST_CASE("schema violations carry pointer-style paths") {
    CHECK_THROWS_AS(parse_model("not json"), IoError);
    try {
        parse_model(R"({"version":1,"n_states":2})");
        CHECK(false);
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("/state_coords") != std::string::npos);
    }
    try {
        parse_model(R"({"version":1,"n_states":1,"state_coords":[[0.0]],"n_actions":1,
                        "action_mask":[[true]],"param_dim":1})");
        CHECK(false);
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("/kernel_components") != std::string::npos);
    }

    // a probability nudged off by 1e-3 loads fine but fails validate()
    auto m = zoo::two_cycle();
    m.kernel_components[0][0][0][1] = 0.999;
    auto diags = validate(m);
    REQUIRE(!diags.empty());
    CHECK(diags.front().path == "/kernel_components/0/0/0");
    CHECK(diags.front().magnitude == doctest::Approx(1e-3).epsilon(1e-6));
}
