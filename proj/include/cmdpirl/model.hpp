#ifndef CMDPIRL_MODEL_HPP
#define CMDPIRL_MODEL_HPP

#include <cstddef>
#include <vector>

#include "cmdpirl/numeric.hpp"

namespace cmdpirl {

// Tabular constrained MDP: dynamics, initial distribution, discount and
// the linear feature maps the reward and constraint are built from.
// The cost budget is normalized to 1.
struct CmdpModel {
    int n_states = 0;
    int n_actions = 0;
    std::vector<std::vector<Vec>> transition;  // [s][a] -> distribution over s'
    Vec initial_dist;                          // p0
    double discount = 0.0;                     // gamma in (0,1)
    Mat reward_features;                       // [s] -> length d_r
    Mat constraint_features;                   // [s] -> length d_c, entries >= 0
    double budget = 1.0;

    int reward_dim() const { return reward_features.empty() ? 0 : static_cast<int>(reward_features[0].size()); }
    int constraint_dim() const { return constraint_features.empty() ? 0 : static_cast<int>(constraint_features[0].size()); }
};

// Stationary randomized policy; probs[s] is a distribution over actions.
struct Policy {
    Mat probs;

    int n_states() const { return static_cast<int>(probs.size()); }
    // argmax action, ties broken by lowest index
    int argmax_action(int s) const;
};

Policy deterministic_policy(const std::vector<int>& actions, int n_actions);

struct WeightPair {
    Vec w_r;
    Vec w_c;
};

enum class FeatureKind { reward, constraint };

// Throws std::invalid_argument naming the first violated model invariant.
void validate_model(const CmdpModel& model);

void validate_policy(const CmdpModel& model, const Policy& policy);

// x(s) = w^T Phi_x(s) for every state.
Vec state_payoff(const CmdpModel& model, const Vec& weights, FeatureKind which);

// Infinite-horizon discounted value: solves V = payoff + gamma * P_pi * V
// to residual <= 1e-10 in sup norm.
Vec policy_value(const CmdpModel& model, const Policy& policy, const Vec& payoff);

// sum_s p0(s) * value(s)
double scalar_objective(const CmdpModel& model, const Vec& value);

// State-to-state transition matrix under a policy:
// P_pi(s, s') = sum_a pi(a|s) p(s'|s,a).
Mat transition_under(const CmdpModel& model, const Policy& policy);

}  // namespace cmdpirl

#endif
