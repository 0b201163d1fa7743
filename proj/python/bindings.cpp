#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "codedconv/analytics.hpp"
#include "codedconv/engine.hpp"
#include "codedconv/mds_code.hpp"
#include "codedconv/planner.hpp"
#include "codedconv/straggler_sim.hpp"

namespace py = pybind11;
using namespace codedconv;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Coded distributed convolution: planning, execution, straggler "
              "simulation and failure-exponent analytics";

    py::class_<CostModel>(m, "CostModel")
        .def(py::init<>())
        .def(py::init([](double c, double log_base) {
                 return CostModel{c, log_base};
             }),
             py::arg("c") = 1.0, py::arg("log_base") = 2.0)
        .def_readwrite("c", &CostModel::c)
        .def_readwrite("log_base", &CostModel::log_base);

    m.def("convolve_direct", &convolve_direct, py::arg("a"), py::arg("x"));
    m.def("convolve_fft", &convolve_fft, py::arg("a"), py::arg("x"));
    m.def("convolve_overlap_add", &convolve_overlap_add, py::arg("a"), py::arg("x"),
          py::arg("block"));
    m.def("shift_add_combine", &shift_add_combine, py::arg("pieces"),
          py::arg("shift_step"), py::arg("total_len"));
    m.def("cost_scenario1", &cost_scenario1, py::arg("m1"), py::arg("m2"),
          py::arg("model") = CostModel{});
    m.def("cost_scenario2", &cost_scenario2, py::arg("m1"), py::arg("m2"),
          py::arg("model") = CostModel{});

    py::enum_<NodeScheme>(m, "NodeScheme")
        .value("chebyshev", NodeScheme::chebyshev)
        .value("uniform", NodeScheme::uniform)
        .value("integer_grid", NodeScheme::integer_grid);

    py::class_<VandermondeCode>(m, "VandermondeCode")
        .def_readonly("n", &VandermondeCode::n)
        .def_readonly("k", &VandermondeCode::k)
        .def_readonly("nodes", &VandermondeCode::nodes)
        .def_readonly("generator", &VandermondeCode::generator);
    py::class_<DecoderMatrix>(m, "DecoderMatrix")
        .def_readonly("indices", &DecoderMatrix::indices)
        .def_readonly("k", &DecoderMatrix::k)
        .def_readonly("inverse", &DecoderMatrix::inverse);
    m.def("make_code", &make_code, py::arg("n"), py::arg("k"),
          py::arg("scheme") = NodeScheme::chebyshev);
    m.def("encode", &encode, py::arg("code"), py::arg("pieces"));
    m.def("make_decoder", &make_decoder, py::arg("code"), py::arg("finished_indices"));
    m.def("decode_group", &decode_group, py::arg("decoder"), py::arg("coded_outputs"));

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def(py::init([](long n1, long n2, long p) {
                 ProblemSpec spec{n1, n2, p};
                 validate(spec);
                 return spec;
             }),
             py::arg("n1"), py::arg("n2"), py::arg("p"))
        .def_readonly("n1", &ProblemSpec::n1)
        .def_readonly("n2", &ProblemSpec::n2)
        .def_readonly("p", &ProblemSpec::p);

    py::enum_<StrategyKind>(m, "StrategyKind")
        .value("uncoded", StrategyKind::uncoded)
        .value("replication", StrategyKind::replication)
        .value("coded", StrategyKind::coded);

    py::class_<TaskSpec>(m, "TaskSpec")
        .def_readonly("task_id", &TaskSpec::task_id)
        .def_readonly("group_id", &TaskSpec::group_id)
        .def_readonly("a_index", &TaskSpec::a_index)
        .def_readonly("x_index", &TaskSpec::x_index);
    py::class_<TaskGroup>(m, "TaskGroup")
        .def_readonly("group_id", &TaskGroup::group_id)
        .def_readonly("members", &TaskGroup::members)
        .def_readonly("quorum", &TaskGroup::quorum)
        .def_readonly("x_index", &TaskGroup::x_index);
    py::class_<ExecutionPlan>(m, "ExecutionPlan")
        .def_readonly("spec", &ExecutionPlan::spec)
        .def_readonly("piece_len", &ExecutionPlan::piece_len)
        .def_readonly("worst_k", &ExecutionPlan::worst_k)
        .def_readonly("tasks", &ExecutionPlan::tasks)
        .def_readonly("groups", &ExecutionPlan::groups)
        .def_property_readonly("kind", [](const ExecutionPlan& p) {
            return p.strategy.kind;
        });

    m.def("plan_uncoded", &plan_uncoded, py::arg("spec"));
    m.def("plan_replication", &plan_replication, py::arg("spec"), py::arg("r"));
    m.def("plan_coded", &plan_coded, py::arg("spec"), py::arg("s"));
    m.def("brute_force_worst_case_k", &brute_force_worst_case_k, py::arg("plan"));

    py::class_<ExecutionResult>(m, "ExecutionResult")
        .def_readonly("output", &ExecutionResult::output)
        .def_readonly("tasks_used", &ExecutionResult::tasks_used)
        .def_readonly("per_group_indices", &ExecutionResult::per_group_indices);

    m.def(
        "execute",
        [](const ExecutionPlan& plan, const RealVector& a, const RealVector& x,
           const std::vector<int>& order) {
            return execute(plan, a, x, CompletionOrder{order});
        },
        py::arg("plan"), py::arg("a"), py::arg("x"), py::arg("order"));
    m.def(
        "execute_concurrent",
        [](const ExecutionPlan& plan, const RealVector& a, const RealVector& x,
           unsigned num_threads) {
            return execute_concurrent(plan, a, x, num_threads);
        },
        py::arg("plan"), py::arg("a"), py::arg("x"), py::arg("num_threads") = 0);

    py::class_<TimeModel>(m, "TimeModel")
        .def(py::init([](double mu, double alpha, CostModel cost) {
                 return TimeModel{mu, alpha, cost};
             }),
             py::arg("mu") = 1.0, py::arg("alpha") = 1.0,
             py::arg("cost") = CostModel{})
        .def_readwrite("mu", &TimeModel::mu)
        .def_readwrite("alpha", &TimeModel::alpha)
        .def_readwrite("cost", &TimeModel::cost);

    m.def("task_shift", &task_shift, py::arg("s"), py::arg("model"));
    m.def("cdf", &cdf, py::arg("s"), py::arg("t"), py::arg("model"));
    m.def("sample_time", &sample_time, py::arg("s"), py::arg("model"), py::arg("u"));
    m.def(
        "simulate_trace",
        [](const ExecutionPlan& plan, const TimeModel& model, std::uint64_t seed) {
            return simulate_trace(plan, model, seed).finish_times;
        },
        py::arg("plan"), py::arg("model"), py::arg("seed"));
    m.def(
        "strategy_finish_time",
        [](const ExecutionPlan& plan, const std::vector<double>& finish_times) {
            return strategy_finish_time(plan, CompletionTrace{finish_times, 0});
        },
        py::arg("plan"), py::arg("finish_times"));
    m.def("monte_carlo_tail", &monte_carlo_tail, py::arg("plan"), py::arg("model"),
          py::arg("deadlines"), py::arg("trials"), py::arg("seed"));

    py::class_<ExponentReport>(m, "ExponentReport")
        .def_readonly("epsilon", &ExponentReport::epsilon)
        .def_readonly("worst_k", &ExponentReport::worst_k)
        .def_readonly("s", &ExponentReport::s)
        .def_readonly("is_upper_bound", &ExponentReport::is_upper_bound);

    m.def("epsilon", &epsilon, py::arg("spec"), py::arg("s"), py::arg("model"));
    m.def("epsilon_replication", &epsilon_replication, py::arg("spec"), py::arg("r"),
          py::arg("model"));
    m.def("theorem5_ratio", &theorem5_ratio, py::arg("spec"), py::arg("model"));
    m.def("heuristic_E", &heuristic_E, py::arg("spec"), py::arg("s"), py::arg("model"));
    m.def("heuristic_E_prime", &heuristic_E_prime, py::arg("spec"), py::arg("s"),
          py::arg("model"));
    m.def("alpha_threshold", &alpha_threshold, py::arg("spec"),
          py::arg("model") = CostModel{});
    m.def("best_s", &best_s, py::arg("spec"), py::arg("model"));
    m.def("feasible_coded_s", &feasible_coded_s, py::arg("spec"));
    m.def("complexity_ratio", &complexity_ratio, py::arg("spec"), py::arg("s"),
          py::arg("model"));
    m.def("fit_tail_slope", &fit_tail_slope, py::arg("points"), py::arg("alpha"),
          py::arg("tail_fraction") = 0.5);
}
