#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmdpirl/cli.hpp"
#include "cmdpirl/demo.hpp"
#include "cmdpirl/forward.hpp"
#include "cmdpirl/gridworld.hpp"
#include "cmdpirl/irl.hpp"
#include "cmdpirl/model.hpp"
#include "cmdpirl/oracle.hpp"
#include "cmdpirl/serialize.hpp"
#include "cmdpirl/visitation.hpp"

namespace py = pybind11;
using namespace cmdpirl;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Constrained-MDP forward solving and reward/constraint recovery";

    py::enum_<FeatureKind>(m, "FeatureKind")
        .value("reward", FeatureKind::reward)
        .value("constraint", FeatureKind::constraint);

    py::enum_<SolveStatus>(m, "SolveStatus")
        .value("optimal", SolveStatus::optimal)
        .value("infeasible", SolveStatus::infeasible);

    py::enum_<SlipMode>(m, "SlipMode")
        .value("four_way", SlipMode::four_way)
        .value("three_way", SlipMode::three_way);

    py::class_<CmdpModel>(m, "CmdpModel")
        .def(py::init<>())
        .def_readwrite("n_states", &CmdpModel::n_states)
        .def_readwrite("n_actions", &CmdpModel::n_actions)
        .def_readwrite("transition", &CmdpModel::transition)
        .def_readwrite("initial_dist", &CmdpModel::initial_dist)
        .def_readwrite("discount", &CmdpModel::discount)
        .def_readwrite("reward_features", &CmdpModel::reward_features)
        .def_readwrite("constraint_features", &CmdpModel::constraint_features)
        .def_readwrite("budget", &CmdpModel::budget)
        .def("to_json", [](const CmdpModel& model) { return model_to_json(model).dump(2); })
        .def_static("from_json", [](const std::string& text) {
            return model_from_json(json::parse(text));
        });

    py::class_<Policy>(m, "Policy")
        .def(py::init<>())
        .def_readwrite("probs", &Policy::probs)
        .def("argmax_action", &Policy::argmax_action);

    py::class_<WeightPair>(m, "WeightPair")
        .def(py::init<>())
        .def(py::init([](Vec w_r, Vec w_c) { return WeightPair{std::move(w_r), std::move(w_c)}; }),
             py::arg("w_r"), py::arg("w_c"))
        .def_readwrite("w_r", &WeightPair::w_r)
        .def_readwrite("w_c", &WeightPair::w_c);

    py::class_<ForwardSolution>(m, "ForwardSolution")
        .def_readonly("policy", &ForwardSolution::policy)
        .def_readonly("lambda_", &ForwardSolution::lambda)
        .def_readonly("reward_value", &ForwardSolution::reward_value)
        .def_readonly("cost_value", &ForwardSolution::cost_value)
        .def_readonly("status", &ForwardSolution::status);

    py::class_<Trajectory>(m, "Trajectory")
        .def(py::init<>())
        .def_readwrite("steps", &Trajectory::steps)
        .def("horizon", &Trajectory::horizon);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("trajectories", &Dataset::trajectories)
        .def_readwrite("horizon", &Dataset::horizon)
        .def_readwrite("seed", &Dataset::seed)
        .def("__len__", &Dataset::size);

    py::class_<VisitationTable>(m, "VisitationTable")
        .def_readonly("d", &VisitationTable::d)
        .def_readonly("horizon", &VisitationTable::horizon);

    py::class_<IrlConfig>(m, "IrlConfig")
        .def(py::init<>())
        .def_readwrite("learning_rate", &IrlConfig::learning_rate)
        .def_readwrite("max_iters", &IrlConfig::max_iters)
        .def_readwrite("tol", &IrlConfig::tol)
        .def_readwrite("horizon", &IrlConfig::horizon)
        .def_readwrite("seed", &IrlConfig::seed)
        .def_readwrite("lambda_floor", &IrlConfig::lambda_floor);

    py::class_<IterationRecord>(m, "IterationRecord")
        .def_readonly("iter", &IterationRecord::iter)
        .def_readonly("lambda_", &IterationRecord::lambda)
        .def_readonly("cost_value", &IterationRecord::cost_value)
        .def_readonly("efe_gap_r", &IterationRecord::efe_gap_r)
        .def_readonly("efe_gap_c", &IterationRecord::efe_gap_c)
        .def_readonly("surrogate", &IterationRecord::surrogate)
        .def_readonly("dw_r", &IterationRecord::dw_r)
        .def_readonly("dw_c", &IterationRecord::dw_c);

    py::class_<IrlResult>(m, "IrlResult")
        .def_readonly("weights", &IrlResult::weights)
        .def_readonly("policy", &IrlResult::policy)
        .def_readonly("lambda_", &IrlResult::lambda)
        .def_readonly("cost_value", &IrlResult::cost_value)
        .def_readonly("history", &IrlResult::history)
        .def_readonly("converged", &IrlResult::converged)
        .def_readonly("iterations", &IrlResult::iterations);

    py::class_<GridworldParams>(m, "GridworldParams")
        .def(py::init<>())
        .def_readwrite("size", &GridworldParams::size)
        .def_readwrite("slip", &GridworldParams::slip)
        .def_readwrite("slip_mode", &GridworldParams::slip_mode)
        .def_readwrite("c1", &GridworldParams::c1)
        .def_readwrite("c2", &GridworldParams::c2)
        .def_readwrite("h1", &GridworldParams::h1)
        .def_readwrite("h2", &GridworldParams::h2)
        .def_readwrite("q", &GridworldParams::q)
        .def_readwrite("a", &GridworldParams::a)
        .def_readwrite("b", &GridworldParams::b)
        .def_readwrite("gamma", &GridworldParams::gamma)
        .def_readwrite("horizon", &GridworldParams::horizon);

    py::class_<GridworldInstance>(m, "GridworldInstance")
        .def_readonly("model", &GridworldInstance::model)
        .def_readonly("ground_truth", &GridworldInstance::ground_truth);

    py::class_<TrajectoryEnsemble>(m, "TrajectoryEnsemble")
        .def_readonly("trajectories", &TrajectoryEnsemble::trajectories)
        .def_readonly("dyn_logprob", &TrajectoryEnsemble::dyn_logprob)
        .def_readonly("horizon", &TrajectoryEnsemble::horizon);

    py::enum_<PotentialMode>(m, "PotentialMode")
        .value("potential_only", PotentialMode::potential_only)
        .value("dynamics_weighted", PotentialMode::dynamics_weighted);

    py::class_<HalfspaceProjection>(m, "HalfspaceProjection")
        .def_readonly("weights", &HalfspaceProjection::weights)
        .def_readonly("mu", &HalfspaceProjection::mu)
        .def_readonly("feasible", &HalfspaceProjection::feasible);

    py::register_exception<SolverInfeasibleError>(m, "SolverInfeasibleError");

    m.def("validate_model", &validate_model);
    m.def("state_payoff", &state_payoff);
    m.def("policy_value", &policy_value);
    m.def("scalar_objective", &scalar_objective);
    m.def("solve_unconstrained", [](const CmdpModel& model, const Vec& payoff) {
        auto sol = solve_unconstrained(model, payoff);
        return py::make_tuple(sol.policy, sol.value);
    });
    m.def("solve_cmdp", &solve_cmdp);
    m.def("discounted_occupancy", &discounted_occupancy);
    m.def("sample_dataset", &sample_dataset, py::arg("model"), py::arg("policy"),
          py::arg("horizon"), py::arg("count"), py::arg("seed"));
    m.def("trajectory_features", &trajectory_features);
    m.def("empirical_feature_expectation", &empirical_feature_expectation);
    m.def("save_dataset", &save_dataset);
    m.def("load_dataset", &load_dataset);
    m.def("state_visitation", &state_visitation);
    m.def("policy_feature_expectation", &policy_feature_expectation);
    m.def("gradients", &gradients);
    m.def("egd_step", &egd_step, py::arg("w"), py::arg("g"), py::arg("kappa"),
          py::arg("exponent_clamp") = 50.0);
    m.def("kl_project_simplex", &kl_project_simplex);
    m.def("kl_project_simplex_halfspace", &kl_project_simplex_halfspace, py::arg("w"),
          py::arg("pfe_c"), py::arg("budget") = 1.0);
    m.def("run_irl", &run_irl);
    m.def("recover_functions", &recover_functions);
    m.def("enumerate_trajectories", &enumerate_trajectories, py::arg("model"), py::arg("horizon"),
          py::arg("cap") = 2e6);
    m.def("log_partition", &log_partition, py::arg("ensemble"), py::arg("model"),
          py::arg("weights"), py::arg("lambda"), py::arg("mode") = PotentialMode::potential_only);
    m.def("boltzmann_probs", &boltzmann_probs, py::arg("ensemble"), py::arg("model"),
          py::arg("weights"), py::arg("lambda"), py::arg("mode") = PotentialMode::potential_only);
    m.def("policy_trajectory_probs", &policy_trajectory_probs);
    m.def("exact_pfe", &exact_pfe);
    m.def("build_gridworld", &build_gridworld);
    m.def("sample_experiment", &sample_experiment);
    m.def("render_grids", &render_grids);
    m.def("run_oracle_suite", &run_oracle_suite);
}
