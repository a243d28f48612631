#ifndef CMDPIRL_GRIDWORLD_HPP
#define CMDPIRL_GRIDWORLD_HPP

#include <cstdint>
#include <string>

#include "cmdpirl/model.hpp"

namespace cmdpirl {

// Slip semantics: four_way spreads the slip mass uniformly over all four
// directions (intended move gets 1-slip+slip/4); three_way spreads it over
// the three unintended directions only.
enum class SlipMode { four_way, three_way };

struct GridworldParams {
    int size = 5;
    double slip = 0.3;
    SlipMode slip_mode = SlipMode::four_way;
    double c1 = 0.5, c2 = 0.5;  // hill slopes
    int h1 = 1, h2 = 1;         // hill location, in {1,2,3}
    double q = 0.5;             // ground-truth reward weight seed
    double a = 0.5, b = 0.5;    // ground-truth constraint weight seeds
    double gamma = 0.99;
    int horizon = 200;
};

struct GridworldInstance {
    CmdpModel model;
    WeightPair ground_truth;  // w_r = (q, 1-q); w_c = (a, 1-a, b, 1-b), raw (1-norm 2)
};

// States indexed s = x*size + y; (0,0) is the top-left start, x grows right,
// y grows down. Actions: 0=up, 1=down, 2=left, 3=right; off-grid moves stay.
// Phi_r((x,y)) = 2.5e-3 * (x, y);
// Phi_c((x,y)) = 0.1 * (e^{-c1(h1-x)}, e^{-c2(h2-y)},
//                       min(size-1-x, x), min(size-1-y, y)).
GridworldInstance build_gridworld(const GridworldParams& params);

// c1, c2, q, a, b ~ U[0,1]; (h1, h2) uniform on {1,2,3}^2; deterministic in
// the seed (draw order: c1, c2, h1, h2, q, a, b).
GridworldParams sample_experiment(std::uint64_t seed);

// Three aligned text grids: reward values, constraint values (4 decimals)
// and argmax action arrows. Throws on a non-gridworld model.
std::string render_grids(const CmdpModel& model, const WeightPair& weights,
                         const Policy& policy);

int grid_size_of(const CmdpModel& model);  // sqrt(n_states), validated

}  // namespace cmdpirl

#endif
