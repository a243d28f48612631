#include "cmdpirl/gridworld.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cmdpirl/rng.hpp"

namespace cmdpirl {

namespace {

// action order: up, down, left, right
constexpr int kDx[4] = {0, 0, -1, 1};
constexpr int kDy[4] = {-1, 1, 0, 0};
const char* kArrows[4] = {"↑", "↓", "←", "→"};

}  // namespace

GridworldInstance build_gridworld(const GridworldParams& params) {
    if (params.size < 2) throw std::invalid_argument("build_gridworld: size must be >= 2");
    if (params.slip < 0.0 || params.slip > 1.0)
        throw std::invalid_argument("build_gridworld: slip must lie in [0,1]");
    const int n = params.size;
    const int S = n * n;

    CmdpModel model;
    model.n_states = S;
    model.n_actions = 4;
    model.discount = params.gamma;
    model.budget = 1.0;
    model.transition.assign(S, std::vector<Vec>(4, Vec(S, 0.0)));
    model.initial_dist.assign(S, 0.0);
    model.initial_dist[0] = 1.0;  // top-left corner (x=0, y=0)
    model.reward_features.assign(S, Vec(2, 0.0));
    model.constraint_features.assign(S, Vec(4, 0.0));

    auto idx = [n](int x, int y) { return x * n + y; };
    auto target = [&](int x, int y, int dir) {
        const int nx = x + kDx[dir];
        const int ny = y + kDy[dir];
        if (nx < 0 || nx >= n || ny < 0 || ny >= n) return idx(x, y);  // stay in place
        return idx(nx, ny);
    };

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const int s = idx(x, y);
            for (int a = 0; a < 4; ++a) {
                Vec& row = model.transition[s][a];
                if (params.slip_mode == SlipMode::four_way) {
                    row[target(x, y, a)] += 1.0 - params.slip;
                    for (int d = 0; d < 4; ++d) row[target(x, y, d)] += params.slip / 4.0;
                } else {
                    row[target(x, y, a)] += 1.0 - params.slip;
                    for (int d = 0; d < 4; ++d)
                        if (d != a) row[target(x, y, d)] += params.slip / 3.0;
                }
            }
            model.reward_features[s][0] = 2.5e-3 * x;
            model.reward_features[s][1] = 2.5e-3 * y;
            model.constraint_features[s][0] = 0.1 * std::exp(-params.c1 * (params.h1 - x));
            model.constraint_features[s][1] = 0.1 * std::exp(-params.c2 * (params.h2 - y));
            model.constraint_features[s][2] = 0.1 * std::min(n - 1 - x, x);
            model.constraint_features[s][3] = 0.1 * std::min(n - 1 - y, y);
        }

    GridworldInstance inst;
    inst.model = std::move(model);
    inst.ground_truth.w_r = {params.q, 1.0 - params.q};
    inst.ground_truth.w_c = {params.a, 1.0 - params.a, params.b, 1.0 - params.b};
    return inst;
}

GridworldParams sample_experiment(std::uint64_t seed) {
    RngStream rng(seed);
    GridworldParams p;
    p.c1 = rng.next_double();
    p.c2 = rng.next_double();
    p.h1 = 1 + std::min(2, static_cast<int>(rng.next_double() * 3.0));
    p.h2 = 1 + std::min(2, static_cast<int>(rng.next_double() * 3.0));
    p.q = rng.next_double();
    p.a = rng.next_double();
    p.b = rng.next_double();
    return p;
}

int grid_size_of(const CmdpModel& model) {
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(model.n_states))));
    if (n * n != model.n_states || model.n_actions != 4)
        throw std::invalid_argument("not a gridworld model");
    return n;
}

std::string render_grids(const CmdpModel& model, const WeightPair& weights,
                         const Policy& policy) {
    const int n = grid_size_of(model);
    const Vec reward = state_payoff(model, weights.w_r, FeatureKind::reward);
    const Vec cost = state_payoff(model, weights.w_c, FeatureKind::constraint);

    std::ostringstream os;
    auto grid_of = [&](const char* title, auto cell) {
        os << title << "\n";
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                if (x) os << ' ';
                cell(x * n + y);
            }
            os << "\n";
        }
        os << "\n";
    };

    os.setf(std::ios::fixed);
    os.precision(4);
    grid_of("reward", [&](int s) { os << reward[s]; });
    grid_of("constraint", [&](int s) { os << cost[s]; });
    grid_of("policy", [&](int s) { os << kArrows[policy.argmax_action(s)]; });
    return os.str();
}

}  // namespace cmdpirl
