#include "cmdpirl/demo.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cmdpirl {

Trajectory sample_trajectory(const CmdpModel& model, const Policy& policy, int horizon,
                             RngStream& rng) {
    if (horizon < 1) throw std::invalid_argument("sample_trajectory: horizon must be >= 1");
    Trajectory traj;
    traj.steps.reserve(horizon);
    int s = rng.categorical(model.initial_dist);
    for (int t = 0; t < horizon; ++t) {
        const int a = rng.categorical(policy.probs[s]);
        traj.steps.emplace_back(s, a);
        if (t + 1 < horizon) s = rng.categorical(model.transition[s][a]);
    }
    return traj;
}

Dataset sample_dataset(const CmdpModel& model, const Policy& policy, int horizon, int count,
                       std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_dataset: need at least one trajectory");
    Dataset d;
    d.horizon = horizon;
    d.seed = seed;
    d.trajectories.reserve(count);
    for (int i = 0; i < count; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        d.trajectories.push_back(sample_trajectory(model, policy, horizon, rng));
    }
    return d;
}

Vec trajectory_features(const Trajectory& traj, const CmdpModel& model, FeatureKind which) {
    const Mat& features =
        which == FeatureKind::reward ? model.reward_features : model.constraint_features;
    const std::size_t dim = features.empty() ? 0 : features[0].size();
    Vec out(dim, 0.0);
    double disc = 1.0;
    for (const auto& [s, a] : traj.steps) {
        (void)a;
        const Vec& phi = features.at(static_cast<std::size_t>(s));
        for (std::size_t i = 0; i < dim; ++i) out[i] += disc * phi[i];
        disc *= model.discount;
    }
    return out;
}

Vec empirical_feature_expectation(const Dataset& data, const CmdpModel& model,
                                  FeatureKind which) {
    if (data.trajectories.empty())
        throw std::invalid_argument("empirical_feature_expectation: empty dataset");
    Vec acc = trajectory_features(data.trajectories[0], model, which);
    for (std::size_t i = 1; i < data.trajectories.size(); ++i) {
        const Vec fi = trajectory_features(data.trajectories[i], model, which);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += fi[k];
    }
    const double inv = 1.0 / static_cast<double>(data.trajectories.size());
    for (double& x : acc) x *= inv;
    return acc;
}

void save_dataset(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "#horizon=" << data.horizon << " seed=" << data.seed << "\n";
    for (const auto& traj : data.trajectories) {
        for (std::size_t t = 0; t < traj.steps.size(); ++t) {
            if (t) out << ';';
            out << traj.steps[t].first << ',' << traj.steps[t].second;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed on " + path);
}

namespace {

Dataset dataset_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::runtime_error("dataset JSON must be an array of trajectories");
    Dataset d;
    for (const auto& jt : j) {
        Trajectory traj;
        for (const auto& step : jt) {
            if (!step.is_array() || step.size() != 2)
                throw std::runtime_error("dataset JSON steps must be [s, a] pairs");
            traj.steps.emplace_back(step[0].get<int>(), step[1].get<int>());
        }
        d.trajectories.push_back(std::move(traj));
    }
    if (d.trajectories.empty()) throw std::runtime_error("dataset JSON holds no trajectories");
    d.horizon = d.trajectories[0].horizon();
    for (const auto& traj : d.trajectories)
        if (traj.horizon() != d.horizon)
            throw std::runtime_error("dataset JSON trajectories have mixed horizons");
    return d;
}

}  // namespace

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    // JSON form: a top-level array of arrays of [s, a]
    char first = 0;
    in >> std::ws;
    in.get(first);
    in.unget();
    if (first == '[') {
        nlohmann::json j;
        in >> j;
        return dataset_from_json(j);
    }

    Dataset d;
    bool have_header = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_header) {
                int horizon = 0;
                unsigned long long seed = 0;
                if (std::sscanf(line.c_str(), "#horizon=%d seed=%llu", &horizon, &seed) == 2) {
                    d.horizon = horizon;
                    d.seed = seed;
                    have_header = true;
                }
            }
            continue;
        }
        Trajectory traj;
        std::stringstream ss(line);
        std::string pair;
        while (std::getline(ss, pair, ';')) {
            int s = 0, a = 0;
            if (std::sscanf(pair.c_str(), "%d,%d", &s, &a) != 2)
                throw std::runtime_error("bad dataset step '" + pair + "' in " + path);
            traj.steps.emplace_back(s, a);
        }
        if (!traj.steps.empty()) d.trajectories.push_back(std::move(traj));
    }
    if (d.trajectories.empty()) throw std::runtime_error("dataset " + path + " holds no trajectories");
    if (!have_header) d.horizon = d.trajectories[0].horizon();
    for (const auto& traj : d.trajectories)
        if (traj.horizon() != d.horizon)
            throw std::runtime_error("dataset " + path + " trajectories have mixed horizons");
    return d;
}

}  // namespace cmdpirl
