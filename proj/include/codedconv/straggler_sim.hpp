#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "codedconv/conv_core.hpp"
#include "codedconv/planner.hpp"

namespace codedconv {

// Shifted-Weibull per-task completion time: deterministic shift
// tau(s) = 2*C*s*log(2s), scale mu, shape alpha (alpha = 1 is the
// shifted exponential).
struct TimeModel {
    double mu = 1.0;
    double alpha = 1.0;
    CostModel cost;
};

// Deterministic part of the task time, 2*C*s*log(2s).
double task_shift(long s, const TimeModel& model);

// P(task time <= t); zero for t <= tau(s).
double cdf(long s, double t, const TimeModel& model);

// Inverse-transform sample: tau(s) * (1 + (-ln(1-u))^(1/alpha) / mu),
// u in [0, 1).
double sample_time(long s, const TimeModel& model, double u);

struct CompletionTrace {
    std::vector<double> finish_times;  // indexed by task id
    std::uint64_t seed = 0;
};

// One independent draw per task of the plan; deterministic given seed.
CompletionTrace simulate_trace(const ExecutionPlan& plan, const TimeModel& model,
                               std::uint64_t seed);

// Per group: quorum-th smallest member finish time; overall: max over groups.
double strategy_finish_time(const ExecutionPlan& plan, const CompletionTrace& trace);

// Survival estimates P(finish time > deadline) over `trials` independent
// traces. Trial i uses a sub-stream derived from (seed, i), so results are
// identical regardless of evaluation order.
std::vector<std::pair<double, double>> monte_carlo_tail(
    const ExecutionPlan& plan, const TimeModel& model,
    const std::vector<double>& deadlines, long trials, std::uint64_t seed);

// Sorted strategy finish times for `trials` seeded sub-stream traces;
// the raw material behind monte_carlo_tail.
std::vector<double> monte_carlo_finish_times(const ExecutionPlan& plan,
                                             const TimeModel& model, long trials,
                                             std::uint64_t seed);

}  // namespace codedconv
