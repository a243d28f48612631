#ifndef CMDPIRL_FORWARD_HPP
#define CMDPIRL_FORWARD_HPP

#include <vector>

#include "cmdpirl/model.hpp"

namespace cmdpirl {

enum class SolveStatus { optimal, infeasible };

// Output of the constrained solve: the (possibly randomized) optimal
// policy together with the optimal Lagrange multiplier of the cost budget.
struct ForwardSolution {
    Policy policy;
    double lambda = 0.0;
    double reward_value = 0.0;
    double cost_value = 0.0;
    SolveStatus status = SolveStatus::optimal;
};

struct UnconstrainedSolution {
    std::vector<int> actions;  // deterministic optimal policy
    Policy policy;
    Vec value;
};

// Discounted MDP with state-only payoff, solved by policy iteration with
// exact evaluation; Bellman residual <= 1e-10, argmax ties broken by
// lowest action index.
UnconstrainedSolution solve_unconstrained(const CmdpModel& model, const Vec& payoff);

// Maximizes sum_s p0(s) V_r(s) subject to sum_s p0(s) V_c(s) <= budget
// via Lagrangian bisection on lambda; if the budget falls strictly between
// the costs of the two policies bracketing the optimal multiplier, returns
// the occupancy-measure mixture meeting the budget with equality.
// status == infeasible when even the cost-minimizing policy exceeds the
// budget; cost_value then reports the minimal achievable cost.
ForwardSolution solve_cmdp(const CmdpModel& model, const WeightPair& weights);

// Infinite-horizon discounted state occupancy d(s) = sum_t gamma^{t-1} P(s_t=s);
// solves (I - gamma * P_pi^T) d = p0 exactly. Sums to 1/(1-gamma).
Vec discounted_occupancy(const CmdpModel& model, const Policy& policy);

}  // namespace cmdpirl

#endif
