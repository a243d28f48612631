#include "cmdpirl/serialize.hpp"

#include <fstream>

namespace cmdpirl {

json model_to_json(const CmdpModel& model) {
    json j;
    j["n_states"] = model.n_states;
    j["n_actions"] = model.n_actions;
    j["transition"] = model.transition;
    j["p0"] = model.initial_dist;
    j["gamma"] = model.discount;
    j["phi_r"] = model.reward_features;
    j["phi_c"] = model.constraint_features;
    return j;
}

CmdpModel model_from_json(const json& j) {
    CmdpModel model;
    model.n_states = j.at("n_states").get<int>();
    model.n_actions = j.at("n_actions").get<int>();
    model.transition = j.at("transition").get<std::vector<std::vector<Vec>>>();
    model.initial_dist = j.at("p0").get<Vec>();
    model.discount = j.at("gamma").get<double>();
    model.reward_features = j.at("phi_r").get<Mat>();
    model.constraint_features = j.at("phi_c").get<Mat>();
    if (j.contains("budget")) model.budget = j.at("budget").get<double>();
    validate_model(model);
    return model;
}

json solution_to_json(const ForwardSolution& sol) {
    json j;
    j["policy"] = sol.policy.probs;
    j["lambda"] = sol.lambda;
    j["reward_value"] = sol.reward_value;
    j["cost_value"] = sol.cost_value;
    j["status"] = sol.status == SolveStatus::optimal ? "optimal" : "infeasible";
    return j;
}

ForwardSolution solution_from_json(const json& j) {
    ForwardSolution sol;
    sol.policy.probs = j.at("policy").get<Mat>();
    sol.lambda = j.at("lambda").get<double>();
    sol.reward_value = j.at("reward_value").get<double>();
    sol.cost_value = j.at("cost_value").get<double>();
    sol.status = j.at("status").get<std::string>() == "optimal" ? SolveStatus::optimal
                                                                : SolveStatus::infeasible;
    return sol;
}

json irl_result_to_json(const IrlResult& result) {
    json j;
    j["w_r"] = result.weights.w_r;
    j["w_c"] = result.weights.w_c;
    j["lambda"] = result.lambda;
    j["cost_value"] = result.cost_value;
    j["policy"] = result.policy.probs;
    j["converged"] = result.converged;
    j["iterations"] = result.iterations;
    json hist = json::array();
    for (const auto& rec : result.history) {
        hist.push_back({{"iter", rec.iter},
                        {"lambda", rec.lambda},
                        {"cost_value", rec.cost_value},
                        {"efe_gap_r", rec.efe_gap_r},
                        {"efe_gap_c", rec.efe_gap_c},
                        {"surrogate", rec.surrogate},
                        {"dw_r", rec.dw_r},
                        {"dw_c", rec.dw_c}});
    }
    j["history"] = std::move(hist);
    return j;
}

json gridworld_params_to_json(const GridworldParams& params) {
    json j;
    j["size"] = params.size;
    j["slip"] = params.slip;
    j["slip_mode"] = params.slip_mode == SlipMode::four_way ? "four_way" : "three_way";
    j["c1"] = params.c1;
    j["c2"] = params.c2;
    j["h1"] = params.h1;
    j["h2"] = params.h2;
    j["q"] = params.q;
    j["a"] = params.a;
    j["b"] = params.b;
    j["gamma"] = params.gamma;
    j["horizon"] = params.horizon;
    return j;
}

GridworldParams gridworld_params_from_json(const json& j) {
    GridworldParams p;
    if (j.contains("size")) p.size = j.at("size").get<int>();
    if (j.contains("slip")) p.slip = j.at("slip").get<double>();
    if (j.contains("slip_mode")) {
        const std::string mode = j.at("slip_mode").get<std::string>();
        if (mode == "four_way")
            p.slip_mode = SlipMode::four_way;
        else if (mode == "three_way")
            p.slip_mode = SlipMode::three_way;
        else
            throw std::runtime_error("unknown slip_mode '" + mode + "'");
    }
    if (j.contains("c1")) p.c1 = j.at("c1").get<double>();
    if (j.contains("c2")) p.c2 = j.at("c2").get<double>();
    if (j.contains("h1")) p.h1 = j.at("h1").get<int>();
    if (j.contains("h2")) p.h2 = j.at("h2").get<int>();
    if (j.contains("q")) p.q = j.at("q").get<double>();
    if (j.contains("a")) p.a = j.at("a").get<double>();
    if (j.contains("b")) p.b = j.at("b").get<double>();
    if (j.contains("gamma")) p.gamma = j.at("gamma").get<double>();
    if (j.contains("horizon")) p.horizon = j.at("horizon").get<int>();
    return p;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed on " + path);
}

void write_text_file(const std::string& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed on " + path);
}

}  // namespace cmdpirl
