#ifndef CMDPIRL_CLI_HPP
#define CMDPIRL_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmdpirl/gridworld.hpp"
#include "cmdpirl/irl.hpp"
#include "cmdpirl/model.hpp"

namespace cmdpirl {

enum class RunMode { forward, demo, irl, e2e, oracle_check };

// Scale policy for the experiment's constraint normalization c' = c/alpha.
// auto_budget picks alpha per instance so the budget-1 CMDP is feasible and
// binding; fixed keeps the features exactly as built (alpha absorbed in the
// ground-truth weight normalization only).
enum class AlphaMode { auto_budget, fixed };

struct RunConfig {
    RunMode mode = RunMode::e2e;
    std::string model_path;             // model JSON, or
    std::optional<GridworldParams> gridworld;  // gridworld source
    std::optional<WeightPair> weights;  // forward/demo weights; defaults to
                                        // the gridworld ground truth (normalized)
    std::string dataset_path;           // irl input / demo output
    std::string out_dir = "out";
    std::uint64_t seed = 20250810;
    int seeds = 10;        // e2e
    int samples = 100;     // demo/e2e dataset size
    IrlConfig irl;         // horizon also used by forward --csv and demo
    AlphaMode alpha_mode = AlphaMode::auto_budget;
    bool csv = false;

    RunConfig() {
        irl.horizon = 200;
        irl.max_iters = 2000;
        irl.lambda_floor = 0.05;
    }
};

// exit codes: 0 success, 1 validation error, 2 solver infeasibility, 3 I/O
int run(const RunConfig& config);

RunConfig config_from_json_file(const std::string& path);

// Per-seed outcome of the e2e experiment, as written into summary rows.
struct SeedOutcome {
    int index = 0;
    std::uint64_t raw_seed = 0;
    bool ok = false;
    std::string failure;  // empty when ok
    double alpha = 0.0;
    double agreement = 0.0;  // fraction of states with matching argmax
    int cheb_distance = -1;  // constraint-peak Chebyshev distance
    bool monotone = false;
    double lambda_rec = 0.0;
    double lambda_true = 0.0;
    int iterations = 0;
    bool converged = false;
    double cost_value = 0.0;
};

struct E2eSummary {
    std::vector<SeedOutcome> rows;
    std::vector<std::uint64_t> skipped_raw_seeds;  // unbindable draws
    double mean_agreement = 0.0;
    int n_perfect = 0;
    int n_cheb_ok = 0;
    int n_monotone = 0;
};

// Runs the experiment protocol for `config.seeds` usable instances and
// writes all per-seed artifacts under config.out_dir. Exposed for tests.
E2eSummary run_e2e(const RunConfig& config);

// Ground-truth construction for one experiment instance: gridworld build,
// simplex normalization of w_c, and the alpha budget normalization.
struct ExperimentInstance {
    GridworldParams params;
    CmdpModel model;  // constraint features already scaled by 1/alpha
    WeightPair truth;  // w_r = (q,1-q), w_c = (a,1-a,b,1-b)/2 (simplex)
    WeightPair truth_raw;
    double alpha = 1.0;
    bool usable = false;
    std::string reject_reason;
};

ExperimentInstance make_experiment_instance(const GridworldParams& params, AlphaMode mode);

// Built-in oracle property suite backing the oracle-check mode; returns the
// number of failed checks and prints one line per check to stdout.
int run_oracle_suite();

}  // namespace cmdpirl

#endif
