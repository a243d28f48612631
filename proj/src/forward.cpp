#include "cmdpirl/forward.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmdpirl/log.hpp"

namespace cmdpirl {

namespace {

constexpr double kBellmanTol = 1e-10;
constexpr double kLambdaTol = 1e-9;
constexpr double kLambdaCap = 1e6;

Vec evaluate_deterministic(const CmdpModel& model, const std::vector<int>& actions,
                           const Vec& payoff) {
    return policy_value(model, deterministic_policy(actions, model.n_actions), payoff);
}

std::vector<int> greedy_actions(const CmdpModel& model, const Vec& payoff, const Vec& value) {
    std::vector<int> acts(model.n_states, 0);
    const double g = model.discount;
    for (int s = 0; s < model.n_states; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        int best_a = 0;
        for (int a = 0; a < model.n_actions; ++a) {
            double q = payoff[s];
            const Vec& row = model.transition[s][a];
            for (int t = 0; t < model.n_states; ++t) q += g * row[t] * value[t];
            if (q > best) {
                best = q;
                best_a = a;
            }
        }
        acts[s] = best_a;
    }
    return acts;
}

double bellman_residual(const CmdpModel& model, const Vec& payoff, const Vec& value) {
    const double g = model.discount;
    double worst = 0.0;
    for (int s = 0; s < model.n_states; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < model.n_actions; ++a) {
            double q = payoff[s];
            const Vec& row = model.transition[s][a];
            for (int t = 0; t < model.n_states; ++t) q += g * row[t] * value[t];
            best = std::max(best, q);
        }
        worst = std::max(worst, std::fabs(best - value[s]));
    }
    return worst;
}

}  // namespace

UnconstrainedSolution solve_unconstrained(const CmdpModel& model, const Vec& payoff) {
    if (static_cast<int>(payoff.size()) != model.n_states)
        throw std::invalid_argument("solve_unconstrained: payoff length mismatch");

    // Howard policy iteration with exact evaluation; greedy ties go to the
    // lowest action index, which also pins the all-zero policy on constant
    // payoffs.
    std::vector<int> actions(model.n_states, 0);
    Vec value = evaluate_deterministic(model, actions, payoff);
    for (int round = 0; round < 500; ++round) {
        std::vector<int> next = greedy_actions(model, payoff, value);
        if (next == actions) break;
        actions = std::move(next);
        value = evaluate_deterministic(model, actions, payoff);
    }

    if (bellman_residual(model, payoff, value) > kBellmanTol) {
        // near-tied policies can in principle cycle; polish with sweeps
        const double g = model.discount;
        for (long sweep = 0; sweep < 2000000; ++sweep) {
            Vec next(model.n_states, 0.0);
            double delta = 0.0;
            for (int s = 0; s < model.n_states; ++s) {
                double best = -std::numeric_limits<double>::infinity();
                for (int a = 0; a < model.n_actions; ++a) {
                    double q = payoff[s];
                    const Vec& row = model.transition[s][a];
                    for (int t = 0; t < model.n_states; ++t) q += g * row[t] * value[t];
                    best = std::max(best, q);
                }
                next[s] = best;
                delta = std::max(delta, std::fabs(best - value[s]));
            }
            value = std::move(next);
            if (delta <= kBellmanTol * (1.0 - g) / (2.0 * g)) break;
        }
        actions = greedy_actions(model, payoff, value);
        value = evaluate_deterministic(model, actions, payoff);
    }

    UnconstrainedSolution out;
    out.actions = actions;
    out.policy = deterministic_policy(actions, model.n_actions);
    out.value = std::move(value);
    return out;
}

Vec discounted_occupancy(const CmdpModel& model, const Policy& policy) {
    const Mat P = transition_under(model, policy);
    const double g = model.discount;
    Mat A(model.n_states, Vec(model.n_states, 0.0));
    for (int t = 0; t < model.n_states; ++t) {
        for (int s = 0; s < model.n_states; ++s) A[t][s] = -g * P[s][t];
        A[t][t] += 1.0;
    }
    return solve_linear(std::move(A), model.initial_dist);
}

namespace {

struct InnerSolve {
    std::vector<int> actions;
    Policy policy;
    double reward = 0.0;
    double cost = 0.0;
};

InnerSolve solve_at_lambda(const CmdpModel& model, const Vec& reward, const Vec& cost,
                           double lambda) {
    Vec payoff(model.n_states, 0.0);
    for (int s = 0; s < model.n_states; ++s) payoff[s] = reward[s] - lambda * cost[s];
    InnerSolve out;
    auto sol = solve_unconstrained(model, payoff);
    out.actions = std::move(sol.actions);
    out.policy = std::move(sol.policy);
    const Vec d = discounted_occupancy(model, out.policy);
    out.reward = dot(d, reward);
    out.cost = dot(d, cost);
    return out;
}

}  // namespace

ForwardSolution solve_cmdp(const CmdpModel& model, const WeightPair& weights) {
    const Vec reward = state_payoff(model, weights.w_r, FeatureKind::reward);
    const Vec cost = state_payoff(model, weights.w_c, FeatureKind::constraint);
    const double budget = model.budget;

    ForwardSolution out;

    InnerSolve at_zero = solve_at_lambda(model, reward, cost, 0.0);
    if (at_zero.cost <= budget) {
        out.policy = std::move(at_zero.policy);
        out.lambda = 0.0;
        out.reward_value = at_zero.reward;
        out.cost_value = at_zero.cost;
        out.status = SolveStatus::optimal;
        return out;
    }

    // cost-minimizing policy decides feasibility and seeds the lambda scale
    Vec neg_cost(model.n_states, 0.0);
    for (int s = 0; s < model.n_states; ++s) neg_cost[s] = -cost[s];
    auto min_sol = solve_unconstrained(model, neg_cost);
    const Vec d_min = discounted_occupancy(model, min_sol.policy);
    const double min_cost = dot(d_min, cost);
    if (min_cost > budget) {
        out.policy = std::move(min_sol.policy);
        out.lambda = 0.0;
        out.reward_value = dot(d_min, reward);
        out.cost_value = min_cost;
        out.status = SolveStatus::infeasible;
        return out;
    }

    const double gap = std::max(budget - min_cost, 1e-12);
    double lam_hi = std::max(linf_norm(reward) / ((1.0 - model.discount) * gap), 1e-6);
    double lam_lo = 0.0;
    InnerSolve lo = std::move(at_zero);
    InnerSolve hi;
    bool hi_found = false;
    while (lam_hi <= kLambdaCap) {
        InnerSolve cand = solve_at_lambda(model, reward, cost, lam_hi);
        if (cand.cost <= budget) {
            hi = std::move(cand);
            hi_found = true;
            break;
        }
        lam_lo = lam_hi;
        lo = std::move(cand);
        lam_hi *= 2.0;
    }
    if (!hi_found) {
        // feasible problem but no sign change below the cap: fall back to
        // the cost-minimizing policy as the feasible bracket end
        log_info("solve_cmdp: lambda cap reached, bracketing with the min-cost policy");
        lam_hi = kLambdaCap;
        hi.actions = min_sol.actions;
        hi.policy = min_sol.policy;
        hi.reward = dot(d_min, reward);
        hi.cost = min_cost;
    }

    while (lam_hi - lam_lo > kLambdaTol) {
        const double mid = 0.5 * (lam_lo + lam_hi);
        InnerSolve cand = solve_at_lambda(model, reward, cost, mid);
        if (cand.cost <= budget) {
            lam_hi = mid;
            hi = std::move(cand);
        } else {
            lam_lo = mid;
            lo = std::move(cand);
        }
    }

    out.lambda = lam_hi;
    out.status = SolveStatus::optimal;

    if (hi.cost >= budget - 1e-12 || lo.cost - hi.cost < 1e-13) {
        out.policy = hi.policy;
        out.reward_value = hi.reward;
        out.cost_value = hi.cost;
        return out;
    }

    // budget sits strictly between the bracket costs: mix the occupancy
    // measures to land on it exactly and read the policy off the mixture
    const double m = (budget - hi.cost) / (lo.cost - hi.cost);
    const Vec d_lo = discounted_occupancy(model, lo.policy);
    const Vec d_hi = discounted_occupancy(model, hi.policy);
    Policy mixed;
    mixed.probs.assign(model.n_states, Vec(model.n_actions, 0.0));
    for (int s = 0; s < model.n_states; ++s) {
        const double mass_lo = m * d_lo[s];
        const double mass_hi = (1.0 - m) * d_hi[s];
        const double mass = mass_lo + mass_hi;
        if (mass > 0.0) {
            mixed.probs[s][lo.actions[s]] += mass_lo / mass;
            mixed.probs[s][hi.actions[s]] += mass_hi / mass;
        } else {
            mixed.probs[s] = hi.policy.probs[s];
        }
    }
    const Vec d_mix = discounted_occupancy(model, mixed);
    out.policy = std::move(mixed);
    out.reward_value = dot(d_mix, reward);
    out.cost_value = dot(d_mix, cost);
    return out;
}

}  // namespace cmdpirl
