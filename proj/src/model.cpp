#include "cmdpirl/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cmdpirl {

namespace {

constexpr double kProbTol = 1e-12;
constexpr double kValueResidualTol = 1e-10;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_distribution(const Vec& p, const std::string& what) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0) fail(what + " has negative entry at index " + std::to_string(i));
        sum += p[i];
    }
    if (std::fabs(sum - 1.0) > kProbTol) {
        std::ostringstream os;
        os << what << " sums to " << sum << ", expected 1";
        fail(os.str());
    }
}

}  // namespace

int Policy::argmax_action(int s) const {
    const Vec& row = probs.at(static_cast<std::size_t>(s));
    int best = 0;
    for (int a = 1; a < static_cast<int>(row.size()); ++a)
        if (row[a] > row[best]) best = a;
    return best;
}

Policy deterministic_policy(const std::vector<int>& actions, int n_actions) {
    Policy pi;
    pi.probs.assign(actions.size(), Vec(n_actions, 0.0));
    for (std::size_t s = 0; s < actions.size(); ++s) {
        if (actions[s] < 0 || actions[s] >= n_actions)
            throw std::invalid_argument("deterministic_policy: action out of range");
        pi.probs[s][actions[s]] = 1.0;
    }
    return pi;
}

void validate_model(const CmdpModel& model) {
    if (model.n_states <= 0) fail("n_states must be positive");
    if (model.n_actions <= 0) fail("n_actions must be positive");
    if (static_cast<int>(model.transition.size()) != model.n_states)
        fail("transition must have one row block per state");
    for (int s = 0; s < model.n_states; ++s) {
        if (static_cast<int>(model.transition[s].size()) != model.n_actions)
            fail("transition[" + std::to_string(s) + "] must have one row per action");
        for (int a = 0; a < model.n_actions; ++a) {
            const Vec& row = model.transition[s][a];
            if (static_cast<int>(row.size()) != model.n_states)
                fail("transition row (s=" + std::to_string(s) + ",a=" + std::to_string(a) +
                     ") has wrong length");
            double sum = 0.0;
            for (int t = 0; t < model.n_states; ++t) {
                if (row[t] < 0.0)
                    fail("transition row (s=" + std::to_string(s) + ",a=" + std::to_string(a) +
                         ") has negative entry");
                sum += row[t];
            }
            if (std::fabs(sum - 1.0) > kProbTol) {
                std::ostringstream os;
                os << "transition row (s=" << s << ",a=" << a << ") sums to " << sum;
                fail(os.str());
            }
        }
    }
    if (static_cast<int>(model.initial_dist.size()) != model.n_states)
        fail("initial_dist has wrong length");
    check_distribution(model.initial_dist, "initial_dist");
    if (!(model.discount > 0.0 && model.discount < 1.0)) fail("discount out of range (0,1)");
    if (static_cast<int>(model.reward_features.size()) != model.n_states)
        fail("reward_features must have one vector per state");
    if (static_cast<int>(model.constraint_features.size()) != model.n_states)
        fail("constraint_features must have one vector per state");
    const std::size_t d_r = model.reward_features[0].size();
    const std::size_t d_c = model.constraint_features[0].size();
    if (d_r == 0) fail("reward feature dimension must be positive");
    if (d_c == 0) fail("constraint feature dimension must be positive");
    for (int s = 0; s < model.n_states; ++s) {
        if (model.reward_features[s].size() != d_r)
            fail("reward_features[" + std::to_string(s) + "] has inconsistent length");
        if (model.constraint_features[s].size() != d_c)
            fail("constraint_features[" + std::to_string(s) + "] has inconsistent length");
        for (std::size_t i = 0; i < d_c; ++i)
            if (model.constraint_features[s][i] < 0.0)
                fail("constraint_features[" + std::to_string(s) + "][" + std::to_string(i) +
                     "] is negative");
    }
    if (static_cast<int>(d_r) >= model.n_states) fail("reward feature dimension must be < n_states");
}

void validate_policy(const CmdpModel& model, const Policy& policy) {
    if (policy.n_states() != model.n_states) fail("policy has wrong number of states");
    for (int s = 0; s < model.n_states; ++s) {
        if (static_cast<int>(policy.probs[s].size()) != model.n_actions)
            fail("policy row " + std::to_string(s) + " has wrong length");
        check_distribution(policy.probs[s], "policy row " + std::to_string(s));
    }
}

Vec state_payoff(const CmdpModel& model, const Vec& weights, FeatureKind which) {
    const Mat& features =
        which == FeatureKind::reward ? model.reward_features : model.constraint_features;
    const std::size_t dim = features.empty() ? 0 : features[0].size();
    if (weights.size() != dim)
        throw std::invalid_argument("state_payoff: weight length " +
                                    std::to_string(weights.size()) + " does not match feature dim " +
                                    std::to_string(dim));
    Vec out(model.n_states, 0.0);
    for (int s = 0; s < model.n_states; ++s) out[s] = dot(weights, features[s]);
    return out;
}

Mat transition_under(const CmdpModel& model, const Policy& policy) {
    Mat P(model.n_states, Vec(model.n_states, 0.0));
    for (int s = 0; s < model.n_states; ++s)
        for (int a = 0; a < model.n_actions; ++a) {
            const double pa = policy.probs[s][a];
            if (pa == 0.0) continue;
            const Vec& row = model.transition[s][a];
            for (int t = 0; t < model.n_states; ++t) P[s][t] += pa * row[t];
        }
    return P;
}

Vec policy_value(const CmdpModel& model, const Policy& policy, const Vec& payoff) {
    if (static_cast<int>(payoff.size()) != model.n_states)
        throw std::invalid_argument("policy_value: payoff length mismatch");
    const Mat P = transition_under(model, policy);
    const double g = model.discount;
    Mat A(model.n_states, Vec(model.n_states, 0.0));
    for (int s = 0; s < model.n_states; ++s) {
        for (int t = 0; t < model.n_states; ++t) A[s][t] = -g * P[s][t];
        A[s][s] += 1.0;
    }
    Vec v = solve_linear(A, payoff);
    // iterative refinement until the fixed-point residual meets the contract
    for (int round = 0; round < 4; ++round) {
        Vec resid(model.n_states, 0.0);
        double worst = 0.0;
        for (int s = 0; s < model.n_states; ++s) {
            double bv = payoff[s];
            for (int t = 0; t < model.n_states; ++t) bv += g * P[s][t] * v[t];
            resid[s] = bv - v[s];
            worst = std::max(worst, std::fabs(resid[s]));
        }
        if (worst <= kValueResidualTol) return v;
        Vec corr = solve_linear(A, resid);
        for (int s = 0; s < model.n_states; ++s) v[s] += corr[s];
    }
    return v;
}

double scalar_objective(const CmdpModel& model, const Vec& value) {
    if (static_cast<int>(value.size()) != model.n_states)
        throw std::invalid_argument("scalar_objective: value length mismatch");
    return dot(model.initial_dist, value);
}

}  // namespace cmdpirl
