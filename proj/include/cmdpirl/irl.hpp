#ifndef CMDPIRL_IRL_HPP
#define CMDPIRL_IRL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cmdpirl/demo.hpp"
#include "cmdpirl/model.hpp"

namespace cmdpirl {

struct IrlConfig {
    double learning_rate = 0.1;  // kappa
    int max_iters = 500;
    double tol = 1e-4;  // stop when max(|dw_r|_1, |dw_c|_1) < tol
    int horizon = 0;    // must equal the dataset horizon
    std::uint64_t seed = 0;
    double lambda_floor = 1e-3;  // gradient floor on lambda; <= 0 disables
    double entry_floor = 1e-12;  // post-projection clamp keeping EGD alive
    double exponent_clamp = 50.0;
};

struct IterationRecord {
    int iter = 0;
    double lambda = 0.0;
    double cost_value = 0.0;
    double efe_gap_r = 0.0;  // |EFE_r - PFE_r|_1
    double efe_gap_c = 0.0;
    double surrogate = 0.0;  // efe_gap_r + lambda * efe_gap_c
    double dw_r = 0.0;
    double dw_c = 0.0;
};

struct IrlResult {
    WeightPair weights;
    Policy policy;  // optimal policy of the returned weights
    double lambda = 0.0;
    double cost_value = 0.0;
    std::vector<IterationRecord> history;
    bool converged = false;
    int iterations = 0;
};

// Raised when the forward solve inside the loop reports an infeasible CMDP.
class SolverInfeasibleError : public std::runtime_error {
  public:
    SolverInfeasibleError(int iteration, double min_cost);
    int iteration() const { return iteration_; }
    double min_cost() const { return min_cost_; }

  private:
    int iteration_;
    double min_cost_;
};

// g_r = -efe_r + pfe_r;  g_c = lambda * (efe_c - pfe_c)
std::pair<Vec, Vec> gradients(const Vec& efe_r, const Vec& pfe_r, const Vec& efe_c,
                              const Vec& pfe_c, double lambda);

// w'_i = w_i * exp(-kappa * g_i), exponent clamped to +-exponent_clamp
Vec egd_step(const Vec& w, const Vec& g, double kappa, double exponent_clamp = 50.0);

// KL/Bregman projection onto the simplex under the negative-entropy mirror
// map: plain 1-norm normalization. Throws on an all-zero input.
Vec kl_project_simplex(const Vec& w);

struct HalfspaceProjection {
    Vec weights;
    double mu = 0.0;
    bool feasible = true;
};

// KL projection onto {v in simplex : v . pfe_c <= budget}. If the normalized
// input already satisfies the constraint it is returned with mu = 0;
// otherwise the tilt v_i ~ w_i * exp(-mu * pfe_c_i) is bisected to meet the
// budget with equality (tolerance 1e-12 on mu). feasible == false when
// min_i pfe_c(i) > budget, in which case weights holds the plain
// normalization and the caller decides the fallback.
HalfspaceProjection kl_project_simplex_halfspace(const Vec& w, const Vec& pfe_c,
                                                 double budget = 1.0);

// Full reward/constraint recovery loop (EFEs once, then per iteration:
// forward solve, visitation PFEs, gradients, EGD steps, projections).
IrlResult run_irl(const CmdpModel& model, const Dataset& data, const IrlConfig& config);

// r(s) = w_r^T Phi_r(s), c(s) = w_c^T Phi_c(s)
std::pair<Vec, Vec> recover_functions(const WeightPair& weights, const CmdpModel& model);

std::string convergence_log(const std::vector<IterationRecord>& history);

}  // namespace cmdpirl

#endif
