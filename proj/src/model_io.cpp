#include "riskmdp/model_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "riskmdp/errors.hpp"
#include "riskmdp/json17.hpp"

namespace riskmdp {

using nlohmann::ordered_json;

namespace {

template <typename T>
T require(const ordered_json& j, const std::string& pointer) {
    const auto ptr = ordered_json::json_pointer(pointer);
    if (!j.contains(ptr)) throw IoError("missing field at " + pointer);
    try {
        return j.at(ptr).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad value at " + pointer + ": " + e.what());
    }
}

AffineMap affine_from(const ordered_json& j, const std::string& pointer) {
    AffineMap m;
    m.intercept = require<double>(j, pointer + "/intercept");
    m.coeffs = require<std::vector<double>>(j, pointer + "/coeffs");
    return m;
}

ordered_json affine_to(const AffineMap& m) {
    return ordered_json{{"intercept", m.intercept}, {"coeffs", m.coeffs}};
}

} // namespace

ParametricMDP parse_model(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("model is not valid JSON: ") + e.what());
    }

    const int version = require<int>(j, "/version");
    if (version != 1) throw IoError("unsupported model version " + std::to_string(version));

    ParametricMDP m;
    m.n_states = require<std::size_t>(j, "/n_states");
    m.state_coords = require<std::vector<std::vector<double>>>(j, "/state_coords");
    m.n_actions = require<std::size_t>(j, "/n_actions");
    m.action_mask = require<std::vector<std::vector<bool>>>(j, "/action_mask");
    m.param_dim = require<std::size_t>(j, "/param_dim");
    m.kernel_components = require<std::vector<KernelTensor>>(j, "/kernel_components");
    m.kernel_weights.intercept = require<std::vector<double>>(j, "/kernel_weights/intercept");
    m.kernel_weights.coeffs =
        require<std::vector<std::vector<double>>>(j, "/kernel_weights/coeffs");
    m.cost_base = require<CostMatrix>(j, "/cost_base");
    m.cost_dirs = require<std::vector<CostMatrix>>(j, "/cost_dirs");
    m.discount_map = affine_from(j, "/discount");

    if (!j.contains("horizon")) throw IoError("missing field at /horizon");
    if (j["horizon"].is_string()) {
        if (j["horizon"].get<std::string>() != "infinite")
            throw IoError("bad value at /horizon: expected \"infinite\" or an integer");
        m.horizon.reset();
    } else if (j["horizon"].is_number_integer()) {
        m.horizon = j["horizon"].get<int>();
    } else {
        throw IoError("bad value at /horizon: expected \"infinite\" or an integer");
    }

    if (!m.is_infinite_horizon()) {
        m.terminal_cost_base = require<std::vector<double>>(j, "/terminal_cost_base");
        m.terminal_cost_dirs = require<std::vector<std::vector<double>>>(j, "/terminal_cost_dirs");
    }

    m.risk.kind = risk_kind_from_string(require<std::string>(j, "/risk/kind"));
    m.risk.p = j["risk"].contains("p") ? j["risk"]["p"].get<double>() : 1.0;
    m.risk.lambda_map = affine_from(j, "/risk/lambda");
    return m;
}

ParametricMDP load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string model_to_json(const ParametricMDP& model) {
    ordered_json j;
    j["version"] = 1;
    j["n_states"] = model.n_states;
    j["state_coords"] = model.state_coords;
    j["n_actions"] = model.n_actions;
    j["action_mask"] = model.action_mask;
    j["param_dim"] = model.param_dim;
    j["kernel_components"] = model.kernel_components;
    j["kernel_weights"] = ordered_json{{"intercept", model.kernel_weights.intercept},
                                       {"coeffs", model.kernel_weights.coeffs}};
    j["cost_base"] = model.cost_base;
    j["cost_dirs"] = model.cost_dirs;
    if (!model.is_infinite_horizon()) {
        j["terminal_cost_base"] = model.terminal_cost_base;
        j["terminal_cost_dirs"] = model.terminal_cost_dirs;
    }
    j["discount"] = affine_to(model.discount_map);
    if (model.is_infinite_horizon())
        j["horizon"] = "infinite";
    else
        j["horizon"] = *model.horizon;
    ordered_json risk;
    risk["kind"] = to_string(model.risk.kind);
    if (model.risk.kind == RiskKind::MeanDeviation ||
        model.risk.kind == RiskKind::MeanUpperSemideviation)
        risk["p"] = model.risk.p;
    risk["lambda"] = affine_to(model.risk.lambda_map);
    j["risk"] = risk;
    return dump_json17(j);
}

void save_model(const ParametricMDP& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << model_to_json(model);
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace riskmdp
