#ifndef CMDPIRL_DEMO_HPP
#define CMDPIRL_DEMO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cmdpirl/model.hpp"
#include "cmdpirl/rng.hpp"

namespace cmdpirl {

// Fixed-horizon rollout of (state, action) pairs.
struct Trajectory {
    std::vector<std::pair<int, int>> steps;

    int horizon() const { return static_cast<int>(steps.size()); }
};

// Batch of demonstrations, all sharing one horizon.
struct Dataset {
    std::vector<Trajectory> trajectories;
    int horizon = 0;
    std::uint64_t seed = 0;

    std::size_t size() const { return trajectories.size(); }
};

// s_1 ~ p0, a_t ~ pi(.|s_t), s_{t+1} ~ p(.|s_t, a_t), exactly `horizon` steps.
Trajectory sample_trajectory(const CmdpModel& model, const Policy& policy, int horizon,
                             RngStream& rng);

// Trajectory i is drawn from the derived stream (seed, i), so the dataset is
// reproducible and order-independent.
Dataset sample_dataset(const CmdpModel& model, const Policy& policy, int horizon,
                       int count, std::uint64_t seed);

// Phi_x(tau) = sum_t gamma^{t-1} Phi_x(s_t)
Vec trajectory_features(const Trajectory& traj, const CmdpModel& model, FeatureKind which);

// EFE: dataset mean of trajectory_features.
Vec empirical_feature_expectation(const Dataset& data, const CmdpModel& model,
                                  FeatureKind which);

// Text format: header "#horizon=T seed=K", then one "s,a;s,a;..." line per
// trajectory. load_dataset also accepts a JSON array of arrays of [s, a].
void save_dataset(const Dataset& data, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace cmdpirl

#endif
