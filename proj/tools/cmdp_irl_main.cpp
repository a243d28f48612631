#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cmdpirl/cli.hpp"
#include "cmdpirl/serialize.hpp"

int main(int argc, char** argv) {
    CLI::App app{"CMDP forward solving, demonstration generation and reward/constraint recovery"};

    std::string mode;
    std::string config_path;
    std::optional<std::string> out_dir, model_path, dataset_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> seeds, samples, horizon, max_iters;
    std::optional<double> kappa, tol, gamma, slip, lambda_floor;
    std::optional<std::string> slip_mode, alpha_mode;
    bool csv = false;

    app.add_option("--mode", mode, "forward | demo | irl | e2e | oracle-check");
    app.add_option("--config", config_path, "JSON config file; flags override its fields");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--model", model_path, "model JSON path");
    app.add_option("--dataset", dataset_path, "dataset path (input for irl, output for demo)");
    app.add_option("--seed", seed, "base random seed");
    app.add_option("--seeds", seeds, "number of e2e experiment instances");
    app.add_option("--samples", samples, "number of demonstration trajectories");
    app.add_option("--horizon", horizon, "trajectory/visitation horizon T");
    app.add_option("--kappa", kappa, "exponentiated-gradient learning rate");
    app.add_option("--tol", tol, "convergence threshold on weight movement");
    app.add_option("--max-iters", max_iters, "iteration cap for the recovery loop");
    app.add_option("--lambda-floor", lambda_floor, "gradient floor on lambda (<=0 disables)");
    app.add_option("--slip-mode", slip_mode, "four_way | three_way");
    app.add_option("--gamma", gamma, "discount factor");
    app.add_option("--slip", slip, "gridworld slip probability");
    app.add_option("--alpha-mode", alpha_mode, "auto | fixed constraint-scale normalization");
    app.add_flag("--csv", csv, "also emit CSV artifacts");

    CLI11_PARSE(app, argc, argv);

    try {
        cmdpirl::RunConfig config;
        if (!config_path.empty()) config = cmdpirl::config_from_json_file(config_path);
        if (!mode.empty()) {
            if (mode == "forward") config.mode = cmdpirl::RunMode::forward;
            else if (mode == "demo") config.mode = cmdpirl::RunMode::demo;
            else if (mode == "irl") config.mode = cmdpirl::RunMode::irl;
            else if (mode == "e2e") config.mode = cmdpirl::RunMode::e2e;
            else if (mode == "oracle-check") config.mode = cmdpirl::RunMode::oracle_check;
            else {
                std::cerr << "error: unknown mode '" << mode << "'\n";
                return 1;
            }
        }
        if (out_dir) config.out_dir = *out_dir;
        if (model_path) config.model_path = *model_path;
        if (dataset_path) config.dataset_path = *dataset_path;
        if (seed) config.seed = *seed;
        if (seeds) config.seeds = *seeds;
        if (samples) config.samples = *samples;
        if (horizon) config.irl.horizon = *horizon;
        if (kappa) config.irl.learning_rate = *kappa;
        if (tol) config.irl.tol = *tol;
        if (max_iters) config.irl.max_iters = *max_iters;
        if (lambda_floor) config.irl.lambda_floor = *lambda_floor;
        if (csv) config.csv = true;
        if (gamma || slip || slip_mode) {
            cmdpirl::GridworldParams gw = config.gridworld.value_or(cmdpirl::GridworldParams{});
            if (gamma) gw.gamma = *gamma;
            if (slip) gw.slip = *slip;
            if (slip_mode) {
                if (*slip_mode == "four_way") gw.slip_mode = cmdpirl::SlipMode::four_way;
                else if (*slip_mode == "three_way") gw.slip_mode = cmdpirl::SlipMode::three_way;
                else {
                    std::cerr << "error: unknown slip mode '" << *slip_mode << "'\n";
                    return 1;
                }
            }
            config.gridworld = gw;
        }
        if (alpha_mode) {
            if (*alpha_mode == "auto") config.alpha_mode = cmdpirl::AlphaMode::auto_budget;
            else if (*alpha_mode == "fixed") config.alpha_mode = cmdpirl::AlphaMode::fixed;
            else {
                std::cerr << "error: unknown alpha mode '" << *alpha_mode << "'\n";
                return 1;
            }
        }
        return cmdpirl::run(config);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
