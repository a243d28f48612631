#ifndef CMDPIRL_ORACLE_HPP
#define CMDPIRL_ORACLE_HPP

#include <cstddef>
#include <vector>

#include "cmdpirl/demo.hpp"
#include "cmdpirl/model.hpp"

namespace cmdpirl {

// Brute-force index set for the "all trajectories" summations. Only usable
// at enumerable scale; never touched by the main IRL loop.
struct TrajectoryEnsemble {
    std::vector<Trajectory> trajectories;
    Vec dyn_logprob;  // log p0(s_1) + sum log p(s_{t+1}|s_t,a_t), policy-free
    int horizon = 0;
};

// All state-action sequences of length `horizon` with positive dynamics
// probability. Refuses when (n_states*n_actions)^horizon exceeds the cap.
TrajectoryEnsemble enumerate_trajectories(const CmdpModel& model, int horizon,
                                          double cap = 2e6);

// potential_only is the paper-literal Boltzmann model over dynamically
// possible paths; dynamics_weighted additionally multiplies by the path
// probability (adds dyn_logprob to the potential).
enum class PotentialMode { potential_only, dynamics_weighted };

double trajectory_potential(const TrajectoryEnsemble& ensemble, std::size_t index,
                            const CmdpModel& model, const WeightPair& weights,
                            double lambda, PotentialMode mode);

// log sum_tau exp(w_r.Phi_r(tau) - lambda * w_c.Phi_c(tau)), max-shifted.
double log_partition(const TrajectoryEnsemble& ensemble, const CmdpModel& model,
                     const WeightPair& weights, double lambda,
                     PotentialMode mode = PotentialMode::potential_only);

// p*(tau) = exp(potential(tau)) / Z; sums to 1 within 1e-12.
Vec boltzmann_probs(const TrajectoryEnsemble& ensemble, const CmdpModel& model,
                    const WeightPair& weights, double lambda,
                    PotentialMode mode = PotentialMode::potential_only);

// Actual trajectory probabilities under a policy (dynamics times policy
// factors); sums to 1 over a complete ensemble.
Vec policy_trajectory_probs(const TrajectoryEnsemble& ensemble, const Policy& policy);

// sum_tau probs(tau) * Phi_x(tau)
Vec exact_pfe(const TrajectoryEnsemble& ensemble, const Vec& probs, const CmdpModel& model,
              FeatureKind which);

struct MaxentReport {
    double boltzmann_entropy = 0.0;
    double best_feasible_entropy = 0.0;
    double entropy_gap = 0.0;  // best feasible minus Boltzmann
    std::size_t feasible_count = 0;
};

// Grid search over distributions on a 2- or 3-trajectory ensemble: among all
// grid points matching the given moments within moment_tol, verifies the
// Boltzmann solution has maximal entropy. Throws when the ensemble is larger
// than the search can cover.
MaxentReport maxent_primal_check(const TrajectoryEnsemble& ensemble, const CmdpModel& model,
                                 const Vec& efe_r, const Vec& efe_c,
                                 const WeightPair& weights, double lambda,
                                 double moment_tol = 1e-6, double grid_step = 1e-3);

}  // namespace cmdpirl

#endif
