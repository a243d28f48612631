#include "cmdpirl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmdpirl {

namespace {

void enumerate_rec(const CmdpModel& model, int horizon, double cap, Trajectory& prefix,
                   double logprob, TrajectoryEnsemble& out) {
    if (prefix.horizon() == horizon) {
        if (static_cast<double>(out.trajectories.size()) + 1.0 > cap)
            throw std::runtime_error("enumerate_trajectories: cap exceeded");
        out.trajectories.push_back(prefix);
        out.dyn_logprob.push_back(logprob);
        return;
    }
    const int s = prefix.steps.back().first;
    const int a = prefix.steps.back().second;
    const Vec& row = model.transition[s][a];
    for (int t = 0; t < model.n_states; ++t) {
        if (row[t] <= 0.0) continue;
        for (int a2 = 0; a2 < model.n_actions; ++a2) {
            prefix.steps.emplace_back(t, a2);
            enumerate_rec(model, horizon, cap, prefix, logprob + std::log(row[t]), out);
            prefix.steps.pop_back();
        }
    }
}

}  // namespace

TrajectoryEnsemble enumerate_trajectories(const CmdpModel& model, int horizon, double cap) {
    if (horizon < 1) throw std::invalid_argument("enumerate_trajectories: horizon must be >= 1");
    const double log_bound =
        horizon * std::log(static_cast<double>(model.n_states) * model.n_actions);
    if (log_bound > std::log(cap))
        throw std::runtime_error("enumerate_trajectories: (n_states*n_actions)^T exceeds cap");

    TrajectoryEnsemble out;
    out.horizon = horizon;
    Trajectory prefix;
    for (int s0 = 0; s0 < model.n_states; ++s0) {
        if (model.initial_dist[s0] <= 0.0) continue;
        for (int a0 = 0; a0 < model.n_actions; ++a0) {
            prefix.steps.emplace_back(s0, a0);
            enumerate_rec(model, horizon, cap, prefix, std::log(model.initial_dist[s0]), out);
            prefix.steps.pop_back();
        }
    }
    return out;
}

double trajectory_potential(const TrajectoryEnsemble& ensemble, std::size_t index,
                            const CmdpModel& model, const WeightPair& weights, double lambda,
                            PotentialMode mode) {
    const Trajectory& traj = ensemble.trajectories.at(index);
    const Vec fr = trajectory_features(traj, model, FeatureKind::reward);
    const Vec fc = trajectory_features(traj, model, FeatureKind::constraint);
    double pot = dot(weights.w_r, fr) - lambda * dot(weights.w_c, fc);
    if (mode == PotentialMode::dynamics_weighted) pot += ensemble.dyn_logprob[index];
    return pot;
}

namespace {

Vec all_potentials(const TrajectoryEnsemble& ensemble, const CmdpModel& model,
                   const WeightPair& weights, double lambda, PotentialMode mode) {
    Vec pots(ensemble.trajectories.size(), 0.0);
    for (std::size_t i = 0; i < pots.size(); ++i)
        pots[i] = trajectory_potential(ensemble, i, model, weights, lambda, mode);
    return pots;
}

}  // namespace

double log_partition(const TrajectoryEnsemble& ensemble, const CmdpModel& model,
                     const WeightPair& weights, double lambda, PotentialMode mode) {
    if (ensemble.trajectories.empty())
        throw std::invalid_argument("log_partition: empty ensemble");
    const Vec pots = all_potentials(ensemble, model, weights, lambda, mode);
    const double shift = *std::max_element(pots.begin(), pots.end());
    double sum = 0.0;
    for (double p : pots) sum += std::exp(p - shift);
    return shift + std::log(sum);
}

Vec boltzmann_probs(const TrajectoryEnsemble& ensemble, const CmdpModel& model,
                    const WeightPair& weights, double lambda, PotentialMode mode) {
    const Vec pots = all_potentials(ensemble, model, weights, lambda, mode);
    const double shift = *std::max_element(pots.begin(), pots.end());
    Vec probs(pots.size(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < pots.size(); ++i) {
        probs[i] = std::exp(pots[i] - shift);
        sum += probs[i];
    }
    for (double& p : probs) p /= sum;
    return probs;
}

Vec policy_trajectory_probs(const TrajectoryEnsemble& ensemble, const Policy& policy) {
    Vec probs(ensemble.trajectories.size(), 0.0);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        double logp = ensemble.dyn_logprob[i];
        bool zero = false;
        for (const auto& [s, a] : ensemble.trajectories[i].steps) {
            const double pa = policy.probs[s][a];
            if (pa <= 0.0) {
                zero = true;
                break;
            }
            logp += std::log(pa);
        }
        probs[i] = zero ? 0.0 : std::exp(logp);
    }
    return probs;
}

Vec exact_pfe(const TrajectoryEnsemble& ensemble, const Vec& probs, const CmdpModel& model,
              FeatureKind which) {
    if (probs.size() != ensemble.trajectories.size())
        throw std::invalid_argument("exact_pfe: probs size mismatch");
    double total = 0.0;
    for (double p : probs) total += p;
    if (std::fabs(total - 1.0) > 1e-6)
        throw std::invalid_argument("exact_pfe: probs sum to " + std::to_string(total));
    Vec out;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] == 0.0) continue;
        const Vec f = trajectory_features(ensemble.trajectories[i], model, which);
        if (out.empty()) out.assign(f.size(), 0.0);
        for (std::size_t k = 0; k < f.size(); ++k) out[k] += probs[i] * f[k];
    }
    if (out.empty()) {
        const std::size_t dim = which == FeatureKind::reward
                                    ? static_cast<std::size_t>(model.reward_dim())
                                    : static_cast<std::size_t>(model.constraint_dim());
        out.assign(dim, 0.0);
    }
    return out;
}

namespace {

double entropy(const Vec& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log(x);
    return h;
}

bool moments_match(const Mat& features, const Vec& q, const Vec& target, double tol) {
    for (std::size_t k = 0; k < target.size(); ++k) {
        double m = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) m += q[i] * features[i][k];
        if (std::fabs(m - target[k]) > tol) return false;
    }
    return true;
}

}  // namespace

MaxentReport maxent_primal_check(const TrajectoryEnsemble& ensemble, const CmdpModel& model,
                                 const Vec& efe_r, const Vec& efe_c, const WeightPair& weights,
                                 double lambda, double moment_tol, double grid_step) {
    const std::size_t n = ensemble.trajectories.size();
    if (n == 0) throw std::invalid_argument("maxent_primal_check: empty ensemble");
    if (n > 3) throw std::runtime_error("maxent_primal_check: search cap exceeded (needs <= 3 trajectories)");

    Mat fr(n), fc(n);
    for (std::size_t i = 0; i < n; ++i) {
        fr[i] = trajectory_features(ensemble.trajectories[i], model, FeatureKind::reward);
        fc[i] = trajectory_features(ensemble.trajectories[i], model, FeatureKind::constraint);
    }

    const Vec pstar = boltzmann_probs(ensemble, model, weights, lambda);
    MaxentReport report;
    report.boltzmann_entropy = entropy(pstar);
    report.best_feasible_entropy = -std::numeric_limits<double>::infinity();

    auto consider = [&](const Vec& q) {
        if (!moments_match(fr, q, efe_r, moment_tol)) return;
        if (!moments_match(fc, q, efe_c, moment_tol)) return;
        ++report.feasible_count;
        report.best_feasible_entropy = std::max(report.best_feasible_entropy, entropy(q));
    };

    if (n == 1) {
        consider(Vec{1.0});
    } else if (n == 2) {
        const long steps = std::lround(1.0 / grid_step);
        for (long i = 0; i <= steps; ++i) {
            const double q1 = static_cast<double>(i) / steps;
            consider(Vec{q1, 1.0 - q1});
        }
    } else {
        const long steps = std::lround(1.0 / grid_step);
        for (long i = 0; i <= steps; ++i)
            for (long j = 0; i + j <= steps; ++j) {
                const double q1 = static_cast<double>(i) / steps;
                const double q2 = static_cast<double>(j) / steps;
                consider(Vec{q1, q2, 1.0 - q1 - q2});
            }
    }

    report.entropy_gap = report.best_feasible_entropy - report.boltzmann_entropy;
    return report;
}

}  // namespace cmdpirl
