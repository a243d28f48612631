#ifndef CMDPIRL_SERIALIZE_HPP
#define CMDPIRL_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "cmdpirl/forward.hpp"
#include "cmdpirl/gridworld.hpp"
#include "cmdpirl/irl.hpp"
#include "cmdpirl/model.hpp"

namespace cmdpirl {

using json = nlohmann::json;

// CmdpModel <-> {n_states, n_actions, transition[s][a][s'], p0, gamma,
//                phi_r[s][d_r], phi_c[s][d_c]}
json model_to_json(const CmdpModel& model);
CmdpModel model_from_json(const json& j);

// ForwardSolution <-> {policy[s][a], lambda, reward_value, cost_value, status}
json solution_to_json(const ForwardSolution& sol);
ForwardSolution solution_from_json(const json& j);

// IrlResult <-> {w_r, w_c, lambda, policy, history, converged}
json irl_result_to_json(const IrlResult& result);

// GridworldParams <-> {size, slip, slip_mode, c1, c2, h1, h2, q, a, b,
//                      gamma, horizon}
json gridworld_params_to_json(const GridworldParams& params);
GridworldParams gridworld_params_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const json& j, const std::string& path);

void write_text_file(const std::string& text, const std::string& path);

}  // namespace cmdpirl

#endif
