#include "cmdpirl/irl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cmdpirl/forward.hpp"
#include "cmdpirl/log.hpp"
#include "cmdpirl/visitation.hpp"

namespace cmdpirl {

SolverInfeasibleError::SolverInfeasibleError(int iteration, double min_cost)
    : std::runtime_error("CMDP solve infeasible at IRL iteration " + std::to_string(iteration) +
                         " (minimal achievable cost " + std::to_string(min_cost) + ")"),
      iteration_(iteration),
      min_cost_(min_cost) {}

std::pair<Vec, Vec> gradients(const Vec& efe_r, const Vec& pfe_r, const Vec& efe_c,
                              const Vec& pfe_c, double lambda) {
    if (efe_r.size() != pfe_r.size()) throw std::invalid_argument("gradients: reward dim mismatch");
    if (efe_c.size() != pfe_c.size())
        throw std::invalid_argument("gradients: constraint dim mismatch");
    if (lambda < 0.0) throw std::invalid_argument("gradients: lambda must be >= 0");
    Vec g_r(efe_r.size(), 0.0);
    for (std::size_t i = 0; i < g_r.size(); ++i) g_r[i] = -efe_r[i] + pfe_r[i];
    Vec g_c(efe_c.size(), 0.0);
    for (std::size_t i = 0; i < g_c.size(); ++i) g_c[i] = lambda * (efe_c[i] - pfe_c[i]);
    return {std::move(g_r), std::move(g_c)};
}

Vec egd_step(const Vec& w, const Vec& g, double kappa, double exponent_clamp) {
    if (w.size() != g.size()) throw std::invalid_argument("egd_step: dim mismatch");
    Vec out(w.size(), 0.0);
    bool clamped = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        double e = -kappa * g[i];
        if (e > exponent_clamp) {
            e = exponent_clamp;
            clamped = true;
        } else if (e < -exponent_clamp) {
            e = -exponent_clamp;
            clamped = true;
        }
        out[i] = w[i] * std::exp(e);
    }
    if (clamped) log_debug("egd_step: exponent clamp triggered");
    return out;
}

Vec kl_project_simplex(const Vec& w) {
    double sum = 0.0;
    for (double x : w) {
        if (x < 0.0) throw std::invalid_argument("kl_project_simplex: negative entry");
        sum += x;
    }
    if (sum <= 0.0) throw std::invalid_argument("kl_project_simplex: all-zero input");
    Vec out(w);
    for (double& x : out) x /= sum;
    return out;
}

namespace {

// tilted point v_i(mu) ~ w_i * exp(-mu * p_i) and its constraint value
std::pair<Vec, double> tilt(const Vec& w, const Vec& p, double mu) {
    Vec z(w.size(), 0.0);
    double zmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.size(); ++i) {
        z[i] = (w[i] > 0.0 ? std::log(w[i]) : -std::numeric_limits<double>::infinity()) -
               mu * p[i];
        zmax = std::max(zmax, z[i]);
    }
    Vec v(w.size(), 0.0);
    double norm = 0.0, val = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double e = std::exp(z[i] - zmax);
        v[i] = e;
        norm += e;
        val += e * p[i];
    }
    for (double& x : v) x /= norm;
    return {std::move(v), val / norm};
}

}  // namespace

HalfspaceProjection kl_project_simplex_halfspace(const Vec& w, const Vec& pfe_c, double budget) {
    if (w.size() != pfe_c.size())
        throw std::invalid_argument("kl_project_simplex_halfspace: dim mismatch");
    for (double p : pfe_c)
        if (p < 0.0) throw std::invalid_argument("kl_project_simplex_halfspace: negative pfe_c");

    HalfspaceProjection out;
    out.weights = kl_project_simplex(w);
    out.mu = 0.0;
    if (dot(out.weights, pfe_c) <= budget) return out;

    // only mass already on a coordinate can absorb the tilt
    double support_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] > 0.0) support_min = std::min(support_min, pfe_c[i]);
    if (support_min > budget) {
        out.feasible = false;
        return out;
    }

    double mu_lo = 0.0, mu_hi = 1.0;
    while (tilt(w, pfe_c, mu_hi).second > budget) {
        mu_lo = mu_hi;
        mu_hi *= 2.0;
        if (mu_hi > 1e15) break;
    }
    while (mu_hi - mu_lo > 1e-12) {
        const double mid = 0.5 * (mu_lo + mu_hi);
        if (tilt(w, pfe_c, mid).second <= budget)
            mu_hi = mid;
        else
            mu_lo = mid;
    }
    auto [v, val] = tilt(w, pfe_c, mu_hi);
    (void)val;
    out.weights = std::move(v);
    out.mu = mu_hi;
    return out;
}

namespace {

Vec floor_and_renormalize(Vec w, double floor) {
    for (double& x : w) x = std::max(x, floor);
    return kl_project_simplex(w);
}

}  // namespace

IrlResult run_irl(const CmdpModel& model, const Dataset& data, const IrlConfig& config) {
    validate_model(model);
    if (data.trajectories.empty()) throw std::invalid_argument("run_irl: empty dataset");
    if (data.horizon != config.horizon)
        throw std::invalid_argument("run_irl: dataset horizon " + std::to_string(data.horizon) +
                                    " does not match config horizon " +
                                    std::to_string(config.horizon));
    if (config.learning_rate <= 0.0) throw std::invalid_argument("run_irl: learning_rate must be > 0");
    if (config.tol <= 0.0) throw std::invalid_argument("run_irl: tol must be > 0");

    const Vec efe_r = empirical_feature_expectation(data, model, FeatureKind::reward);
    const Vec efe_c = empirical_feature_expectation(data, model, FeatureKind::constraint);

    const int d_r = model.reward_dim();
    const int d_c = model.constraint_dim();
    Vec w_r(d_r, 1.0 / d_r);
    Vec w_c(d_c, 1.0 / d_c);

    IrlResult result;
    result.converged = false;
    result.iterations = 0;

    for (int it = 1; it <= config.max_iters; ++it) {
        const ForwardSolution sol = solve_cmdp(model, WeightPair{w_r, w_c});
        if (sol.status == SolveStatus::infeasible)
            throw SolverInfeasibleError(it, sol.cost_value);

        const VisitationTable table = state_visitation(model, sol.policy, config.horizon);
        const Vec pfe_r = policy_feature_expectation(table, model, FeatureKind::reward);
        const Vec pfe_c = policy_feature_expectation(table, model, FeatureKind::constraint);

        double lam_eff = sol.lambda;
        if (config.lambda_floor > 0.0 && lam_eff < config.lambda_floor) {
            lam_eff = config.lambda_floor;
            log_debug("run_irl: lambda floor binds at iteration " + std::to_string(it));
        }
        auto [g_r, g_c] = gradients(efe_r, pfe_r, efe_c, pfe_c, lam_eff);

        Vec next_r = kl_project_simplex(egd_step(w_r, g_r, config.learning_rate,
                                                 config.exponent_clamp));
        next_r = floor_and_renormalize(std::move(next_r), config.entry_floor);

        HalfspaceProjection proj = kl_project_simplex_halfspace(
            egd_step(w_c, g_c, config.learning_rate, config.exponent_clamp), pfe_c, model.budget);
        if (!proj.feasible)
            log_info("run_irl: budget projection infeasible at iteration " + std::to_string(it) +
                     ", renormalizing only");
        Vec next_c = floor_and_renormalize(std::move(proj.weights), config.entry_floor);

        IterationRecord rec;
        rec.iter = it;
        rec.lambda = sol.lambda;
        rec.cost_value = sol.cost_value;
        rec.efe_gap_r = l1_dist(efe_r, pfe_r);
        rec.efe_gap_c = l1_dist(efe_c, pfe_c);
        rec.surrogate = rec.efe_gap_r + sol.lambda * rec.efe_gap_c;
        rec.dw_r = l1_dist(next_r, w_r);
        rec.dw_c = l1_dist(next_c, w_c);
        result.history.push_back(rec);

        w_r = std::move(next_r);
        w_c = std::move(next_c);
        result.iterations = it;

        if (std::max(rec.dw_r, rec.dw_c) < config.tol) {
            result.converged = true;
            break;
        }
    }

    // one more forward solve so the returned policy belongs to the returned weights
    const ForwardSolution final_sol = solve_cmdp(model, WeightPair{w_r, w_c});
    if (final_sol.status == SolveStatus::infeasible)
        throw SolverInfeasibleError(result.iterations + 1, final_sol.cost_value);

    result.weights = WeightPair{std::move(w_r), std::move(w_c)};
    result.policy = final_sol.policy;
    result.lambda = final_sol.lambda;
    result.cost_value = final_sol.cost_value;
    return result;
}

std::pair<Vec, Vec> recover_functions(const WeightPair& weights, const CmdpModel& model) {
    return {state_payoff(model, weights.w_r, FeatureKind::reward),
            state_payoff(model, weights.w_c, FeatureKind::constraint)};
}

std::string convergence_log(const std::vector<IterationRecord>& history) {
    std::ostringstream os;
    os.precision(17);
    os << "iter\tlambda\tcost_value\tefe_gap_r\tefe_gap_c\tdw_r\tdw_c\n";
    for (const auto& rec : history)
        os << rec.iter << '\t' << rec.lambda << '\t' << rec.cost_value << '\t' << rec.efe_gap_r
           << '\t' << rec.efe_gap_c << '\t' << rec.dw_r << '\t' << rec.dw_c << '\n';
    return os.str();
}

}  // namespace cmdpirl
