#include "cmdpirl/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cmdpirl/demo.hpp"
#include "cmdpirl/forward.hpp"
#include "cmdpirl/log.hpp"
#include "cmdpirl/serialize.hpp"
#include "cmdpirl/visitation.hpp"

namespace cmdpirl {

namespace fs = std::filesystem;

namespace {

std::string mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::forward: return "forward";
        case RunMode::demo: return "demo";
        case RunMode::irl: return "irl";
        case RunMode::e2e: return "e2e";
        case RunMode::oracle_check: return "oracle-check";
    }
    return "?";
}

RunMode mode_from_name(const std::string& name) {
    if (name == "forward") return RunMode::forward;
    if (name == "demo") return RunMode::demo;
    if (name == "irl") return RunMode::irl;
    if (name == "e2e") return RunMode::e2e;
    if (name == "oracle-check") return RunMode::oracle_check;
    throw std::invalid_argument("unknown mode '" + name + "'");
}

json config_to_json(const RunConfig& c) {
    json j;
    j["mode"] = mode_name(c.mode);
    if (!c.model_path.empty()) j["model"] = c.model_path;
    if (c.gridworld) j["gridworld"] = gridworld_params_to_json(*c.gridworld);
    if (c.weights) j["weights"] = {{"w_r", c.weights->w_r}, {"w_c", c.weights->w_c}};
    if (!c.dataset_path.empty()) j["dataset"] = c.dataset_path;
    j["out"] = c.out_dir;
    j["seed"] = c.seed;
    j["seeds"] = c.seeds;
    j["samples"] = c.samples;
    j["horizon"] = c.irl.horizon;
    j["kappa"] = c.irl.learning_rate;
    j["tol"] = c.irl.tol;
    j["max_iters"] = c.irl.max_iters;
    j["lambda_floor"] = c.irl.lambda_floor;
    j["alpha_mode"] = c.alpha_mode == AlphaMode::auto_budget ? "auto" : "fixed";
    j["csv"] = c.csv;
    return j;
}

void save_artifact(json j, const RunConfig& config, const std::string& path) {
    j["config"] = config_to_json(config);
    save_json_file(j, path);
}

double mean_sign(const Vec& values) {
    double s = 0.0;
    for (double v : values) s += (v > 0.0) - (v < 0.0);
    return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

struct GridMetrics {
    double agreement = 0.0;
    int cheb = -1;
    bool monotone = false;
};

int argmax_index(const Vec& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

GridMetrics grid_metrics(const CmdpModel& model, const Policy& true_policy,
                         const Policy& rec_policy, const Vec& c_true, const Vec& c_rec,
                         const Vec& r_rec) {
    const int n = grid_size_of(model);
    GridMetrics m;
    int match = 0;
    for (int s = 0; s < model.n_states; ++s)
        if (true_policy.argmax_action(s) == rec_policy.argmax_action(s)) ++match;
    m.agreement = static_cast<double>(match) / model.n_states;

    const int pk_t = argmax_index(c_true);
    const int pk_r = argmax_index(c_rec);
    m.cheb = std::max(std::abs(pk_t / n - pk_r / n), std::abs(pk_t % n - pk_r % n));

    Vec dx, dy;
    for (int x = 0; x + 1 < n; ++x)
        for (int y = 0; y < n; ++y) dx.push_back(r_rec[(x + 1) * n + y] - r_rec[x * n + y]);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y + 1 < n; ++y) dy.push_back(r_rec[x * n + y + 1] - r_rec[x * n + y]);
    m.monotone = mean_sign(dx) >= 0.0 && mean_sign(dy) >= 0.0;
    return m;
}

void write_grid_csv(const Vec& values, int n, const std::string& path) {
    std::ostringstream os;
    os.precision(17);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            if (x) os << ',';
            os << values[x * n + y];
        }
        os << '\n';
    }
    write_text_file(os.str(), path);
}

void write_policy_csv(const Policy& policy, int n, const std::string& path) {
    std::ostringstream os;
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            if (x) os << ',';
            os << policy.argmax_action(x * n + y);
        }
        os << '\n';
    }
    write_text_file(os.str(), path);
}

void write_visitation_csv(const VisitationTable& table, const std::string& path) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& row : table.d) {
        for (std::size_t s = 0; s < row.size(); ++s) {
            if (s) os << ',';
            os << row[s];
        }
        os << '\n';
    }
    write_text_file(os.str(), path);
}

// model + weights as configured for the forward/demo/irl modes
std::pair<CmdpModel, WeightPair> resolve_model_and_weights(const RunConfig& config,
                                                           bool need_weights) {
    CmdpModel model;
    WeightPair weights;
    bool have_weights = false;
    if (config.gridworld) {
        GridworldInstance inst = build_gridworld(*config.gridworld);
        model = std::move(inst.model);
        weights = inst.ground_truth;
        for (double& x : weights.w_c) x /= 2.0;  // simplex normalization of the raw truth
        have_weights = true;
    } else if (!config.model_path.empty()) {
        model = model_from_json(load_json_file(config.model_path));
    } else {
        throw std::invalid_argument("no model source: provide a gridworld config or a model path");
    }
    if (config.weights) {
        weights = *config.weights;
        have_weights = true;
    }
    if (need_weights && !have_weights)
        throw std::invalid_argument("mode requires weights (w_r, w_c) in the config");
    validate_model(model);
    return {std::move(model), std::move(weights)};
}

}  // namespace

ExperimentInstance make_experiment_instance(const GridworldParams& params, AlphaMode mode) {
    ExperimentInstance inst;
    inst.params = params;
    GridworldInstance built = build_gridworld(params);
    inst.model = std::move(built.model);
    inst.truth_raw = built.ground_truth;
    inst.truth = built.ground_truth;
    for (double& x : inst.truth.w_c) x /= 2.0;
    inst.alpha = 1.0;
    inst.usable = true;

    if (mode == AlphaMode::fixed) return inst;

    // budget normalization c' = c/alpha: pick alpha so the unit budget is
    // feasible for every simplex weight at the start and binding for the truth
    const Vec r = state_payoff(inst.model, inst.truth.w_r, FeatureKind::reward);
    const Vec c = state_payoff(inst.model, inst.truth.w_c, FeatureKind::constraint);
    Vec neg_c(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) neg_c[i] = -c[i];

    const auto min_sol = solve_unconstrained(inst.model, neg_c);
    const double min_cost = dot(discounted_occupancy(inst.model, min_sol.policy), c);
    const auto unc_sol = solve_unconstrained(inst.model, r);
    const double unc_cost = dot(discounted_occupancy(inst.model, unc_sol.policy), c);

    const int d_c = inst.model.constraint_dim();
    const Vec uniform_wc(d_c, 1.0 / d_c);
    const Vec cu = state_payoff(inst.model, uniform_wc, FeatureKind::constraint);
    Vec neg_cu(cu.size());
    for (std::size_t i = 0; i < cu.size(); ++i) neg_cu[i] = -cu[i];
    const auto min_u = solve_unconstrained(inst.model, neg_cu);
    const double min_cost_u = dot(discounted_occupancy(inst.model, min_u.policy), cu);

    const double alpha =
        std::max(std::pow(min_cost, 0.25) * std::pow(unc_cost, 0.75), 1.02 * min_cost_u);
    if (alpha >= 0.95 * unc_cost) {
        inst.usable = false;
        inst.reject_reason = "budget cannot bind (alpha too close to the unconstrained cost)";
        return inst;
    }
    inst.alpha = alpha;
    for (auto& phi : inst.model.constraint_features)
        for (double& x : phi) x /= alpha;
    return inst;
}

E2eSummary run_e2eImpl(const RunConfig& config);

E2eSummary run_e2e(const RunConfig& config) { return run_e2eImpl(config); }

E2eSummary run_e2eImpl(const RunConfig& config) {
    fs::create_directories(config.out_dir);
    const GridworldParams base = config.gridworld.value_or(GridworldParams{});

    E2eSummary summary;
    const int max_attempts = 40 * std::max(config.seeds, 1);
    int attempt = 0;
    while (static_cast<int>(summary.rows.size()) < config.seeds && attempt < max_attempts) {
        const std::uint64_t params_seed = derive_seed(config.seed, 2 * attempt);
        const std::uint64_t dataset_seed = derive_seed(config.seed, 2 * attempt + 1);
        ++attempt;

        GridworldParams params = sample_experiment(params_seed);
        params.size = base.size;
        params.slip = base.slip;
        params.slip_mode = base.slip_mode;
        params.gamma = base.gamma;
        params.horizon = config.irl.horizon;

        ExperimentInstance inst = make_experiment_instance(params, config.alpha_mode);
        if (!inst.usable) {
            summary.skipped_raw_seeds.push_back(params_seed);
            log_info("e2e: skipping unusable draw (" + inst.reject_reason + ")");
            continue;
        }

        SeedOutcome row;
        row.index = static_cast<int>(summary.rows.size());
        row.raw_seed = params_seed;
        row.alpha = inst.alpha;

        const fs::path seed_dir = fs::path(config.out_dir) / ("seed_" + std::to_string(row.index));
        fs::create_directories(seed_dir);

        json params_json = gridworld_params_to_json(inst.params);
        params_json["alpha"] = inst.alpha;
        params_json["raw_seed"] = params_seed;
        params_json["dataset_seed"] = dataset_seed;
        params_json["w_r_true"] = inst.truth.w_r;
        params_json["w_c_true_raw"] = inst.truth_raw.w_c;
        params_json["w_c_true"] = inst.truth.w_c;
        save_artifact(params_json, config, (seed_dir / "params.json").string());

        const ForwardSolution true_sol = solve_cmdp(inst.model, inst.truth);
        save_artifact(solution_to_json(true_sol), config, (seed_dir / "forward_true.json").string());
        row.lambda_true = true_sol.lambda;

        if (true_sol.status == SolveStatus::infeasible) {
            row.ok = false;
            row.failure = "true CMDP infeasible (min cost " + std::to_string(true_sol.cost_value) + ")";
            summary.rows.push_back(row);
            continue;
        }

        const Dataset data = sample_dataset(inst.model, true_sol.policy, config.irl.horizon,
                                            config.samples, dataset_seed);
        save_dataset(data, (seed_dir / "dataset.txt").string());

        IrlConfig irl_cfg = config.irl;
        irl_cfg.seed = dataset_seed;
        try {
            const IrlResult result = run_irl(inst.model, data, irl_cfg);
            save_artifact(irl_result_to_json(result), config,
                          (seed_dir / "irl_result.json").string());
            write_text_file(convergence_log(result.history),
                            (seed_dir / "convergence.tsv").string());

            const auto [r_rec, c_rec] = recover_functions(result.weights, inst.model);
            const auto [r_true, c_true] = recover_functions(inst.truth, inst.model);
            (void)r_true;
            const GridMetrics m = grid_metrics(inst.model, true_sol.policy, result.policy, c_true,
                                               c_rec, r_rec);
            row.ok = true;
            row.agreement = m.agreement;
            row.cheb_distance = m.cheb;
            row.monotone = m.monotone;
            row.lambda_rec = result.lambda;
            row.iterations = result.iterations;
            row.converged = result.converged;
            row.cost_value = result.cost_value;

            write_text_file(render_grids(inst.model, inst.truth, true_sol.policy),
                            (seed_dir / "grids_true.txt").string());
            write_text_file(render_grids(inst.model, result.weights, result.policy),
                            (seed_dir / "grids_recovered.txt").string());
            if (config.csv) {
                const int n = grid_size_of(inst.model);
                write_grid_csv(r_rec, n, (seed_dir / "reward.csv").string());
                write_grid_csv(c_rec, n, (seed_dir / "constraint.csv").string());
                write_policy_csv(result.policy, n, (seed_dir / "policy.csv").string());
            }
        } catch (const SolverInfeasibleError& e) {
            row.ok = false;
            row.failure = e.what();
        }
        summary.rows.push_back(row);
        log_info("e2e: seed " + std::to_string(row.index) + (row.ok ? " done" : " failed"));
    }

    int n_ok = 0;
    for (const auto& row : summary.rows) {
        if (row.ok) {
            ++n_ok;
            summary.mean_agreement += row.agreement;
            if (row.agreement >= 1.0) ++summary.n_perfect;
            if (row.cheb_distance >= 0 && row.cheb_distance <= 1) ++summary.n_cheb_ok;
            if (row.monotone) ++summary.n_monotone;
        }
    }
    // failed seeds count as zero agreement in the mean
    if (!summary.rows.empty())
        summary.mean_agreement /= static_cast<double>(summary.rows.size());

    std::ostringstream tsv;
    tsv.precision(17);
    tsv << "index\traw_seed\tstatus\talpha\tagreement\tcheb\tmonotone\tlambda_rec\tlambda_true"
           "\titerations\tconverged\tcost_value\n";
    for (const auto& row : summary.rows) {
        tsv << row.index << '\t' << row.raw_seed << '\t' << (row.ok ? "ok" : "failed") << '\t'
            << row.alpha << '\t' << row.agreement << '\t' << row.cheb_distance << '\t'
            << (row.monotone ? 1 : 0) << '\t' << row.lambda_rec << '\t' << row.lambda_true << '\t'
            << row.iterations << '\t' << (row.converged ? 1 : 0) << '\t' << row.cost_value << '\n';
    }
    write_text_file(tsv.str(), (fs::path(config.out_dir) / "summary.tsv").string());

    json jsum;
    json rows = json::array();
    for (const auto& row : summary.rows) {
        rows.push_back({{"index", row.index},
                        {"raw_seed", row.raw_seed},
                        {"ok", row.ok},
                        {"failure", row.failure},
                        {"alpha", row.alpha},
                        {"agreement", row.agreement},
                        {"cheb", row.cheb_distance},
                        {"monotone", row.monotone},
                        {"lambda_rec", row.lambda_rec},
                        {"lambda_true", row.lambda_true},
                        {"iterations", row.iterations},
                        {"converged", row.converged},
                        {"cost_value", row.cost_value}});
    }
    jsum["rows"] = std::move(rows);
    jsum["skipped_raw_seeds"] = summary.skipped_raw_seeds;
    jsum["aggregate"] = {{"n_seeds", summary.rows.size()},
                         {"n_ok", n_ok},
                         {"mean_agreement", summary.mean_agreement},
                         {"n_perfect", summary.n_perfect},
                         {"n_cheb_ok", summary.n_cheb_ok},
                         {"n_monotone", summary.n_monotone}};
    save_artifact(jsum, config, (fs::path(config.out_dir) / "summary.json").string());

    // timestamps are confined to this side file
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    json meta;
    meta["unix_time"] =
        std::chrono::duration_cast<std::chrono::seconds>(now).count();
    save_json_file(meta, (fs::path(config.out_dir) / "meta.json").string());

    return summary;
}

namespace {

int run_forward(const RunConfig& config) {
    auto [model, weights] = resolve_model_and_weights(config, true);
    const ForwardSolution sol = solve_cmdp(model, weights);
    fs::create_directories(config.out_dir);
    save_artifact(solution_to_json(sol), config,
                  (fs::path(config.out_dir) / "forward.json").string());
    if (config.csv) {
        const VisitationTable table = state_visitation(model, sol.policy, config.irl.horizon);
        write_visitation_csv(table, (fs::path(config.out_dir) / "visitation.csv").string());
    }
    if (sol.status == SolveStatus::infeasible) {
        std::cerr << "infeasible: minimal achievable cost " << sol.cost_value << "\n";
        return 2;
    }
    std::cout << "forward: lambda=" << sol.lambda << " reward_value=" << sol.reward_value
              << " cost_value=" << sol.cost_value << "\n";
    return 0;
}

int run_demo(const RunConfig& config) {
    auto [model, weights] = resolve_model_and_weights(config, true);
    const ForwardSolution sol = solve_cmdp(model, weights);
    if (sol.status == SolveStatus::infeasible) {
        std::cerr << "infeasible: minimal achievable cost " << sol.cost_value << "\n";
        return 2;
    }
    fs::create_directories(config.out_dir);
    const std::string path = config.dataset_path.empty()
                                 ? (fs::path(config.out_dir) / "dataset.txt").string()
                                 : config.dataset_path;
    const Dataset data =
        sample_dataset(model, sol.policy, config.irl.horizon, config.samples, config.seed);
    save_dataset(data, path);
    save_artifact(solution_to_json(sol), config,
                  (fs::path(config.out_dir) / "forward.json").string());
    std::cout << "demo: wrote " << data.size() << " trajectories to " << path << "\n";
    return 0;
}

int run_irl_mode(const RunConfig& config) {
    auto [model, weights] = resolve_model_and_weights(config, false);
    (void)weights;
    if (config.dataset_path.empty())
        throw std::invalid_argument("irl mode requires a dataset path");
    const Dataset data = load_dataset(config.dataset_path);
    const IrlResult result = run_irl(model, data, config.irl);
    fs::create_directories(config.out_dir);
    save_artifact(irl_result_to_json(result), config,
                  (fs::path(config.out_dir) / "irl_result.json").string());
    write_text_file(convergence_log(result.history),
                    (fs::path(config.out_dir) / "convergence.tsv").string());
    if (config.csv) {
        const VisitationTable table = state_visitation(model, result.policy, config.irl.horizon);
        write_visitation_csv(table, (fs::path(config.out_dir) / "visitation.csv").string());
    }
    std::cout << "irl: converged=" << (result.converged ? "yes" : "no")
              << " iterations=" << result.iterations << " lambda=" << result.lambda << "\n";
    return 0;
}

int run_e2e_mode(const RunConfig& config) {
    const E2eSummary summary = run_e2e(config);
    std::cout << "e2e: seeds=" << summary.rows.size()
              << " mean_agreement=" << summary.mean_agreement
              << " perfect=" << summary.n_perfect << " cheb_ok=" << summary.n_cheb_ok
              << " monotone=" << summary.n_monotone << "\n";
    bool any_failed = false;
    for (const auto& row : summary.rows) any_failed |= !row.ok;
    return any_failed ? 2 : 0;
}

}  // namespace

int run(const RunConfig& config) {
    try {
        switch (config.mode) {
            case RunMode::forward: return run_forward(config);
            case RunMode::demo: return run_demo(config);
            case RunMode::irl: return run_irl_mode(config);
            case RunMode::e2e: return run_e2e_mode(config);
            case RunMode::oracle_check: return run_oracle_suite() == 0 ? 0 : 1;
        }
        return 1;
    } catch (const SolverInfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: bad JSON input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

RunConfig config_from_json_file(const std::string& path) {
    const json j = load_json_file(path);
    RunConfig c;
    if (j.contains("mode")) c.mode = mode_from_name(j.at("mode").get<std::string>());
    if (j.contains("model")) c.model_path = j.at("model").get<std::string>();
    if (j.contains("gridworld")) c.gridworld = gridworld_params_from_json(j.at("gridworld"));
    if (j.contains("weights")) {
        WeightPair w;
        w.w_r = j.at("weights").at("w_r").get<Vec>();
        w.w_c = j.at("weights").at("w_c").get<Vec>();
        c.weights = std::move(w);
    }
    if (j.contains("dataset")) c.dataset_path = j.at("dataset").get<std::string>();
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<int>();
    if (j.contains("samples")) c.samples = j.at("samples").get<int>();
    if (j.contains("horizon")) c.irl.horizon = j.at("horizon").get<int>();
    if (j.contains("kappa")) c.irl.learning_rate = j.at("kappa").get<double>();
    if (j.contains("tol")) c.irl.tol = j.at("tol").get<double>();
    if (j.contains("max_iters")) c.irl.max_iters = j.at("max_iters").get<int>();
    if (j.contains("lambda_floor")) c.irl.lambda_floor = j.at("lambda_floor").get<double>();
    if (j.contains("alpha_mode")) {
        const std::string mode = j.at("alpha_mode").get<std::string>();
        if (mode == "auto")
            c.alpha_mode = AlphaMode::auto_budget;
        else if (mode == "fixed")
            c.alpha_mode = AlphaMode::fixed;
        else
            throw std::invalid_argument("unknown alpha_mode '" + mode + "'");
    }
    if (j.contains("csv")) c.csv = j.at("csv").get<bool>();
    return c;
}

}  // namespace cmdpirl
