#include "codedconv/straggler_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace codedconv {

double task_shift(long s, const TimeModel& model) {
    if (s < 1) throw std::invalid_argument("task_shift: s must be >= 1");
    return 2.0 * model.cost.c * static_cast<double>(s) *
           model.cost.log(2.0 * static_cast<double>(s));
}

double cdf(long s, double t, const TimeModel& model) {
    const double tau = task_shift(s, model);
    if (t <= tau) return 0.0;
    return 1.0 - std::exp(-std::pow(model.mu * (t / tau - 1.0), model.alpha));
}

double sample_time(long s, const TimeModel& model, double u) {
    if (u < 0.0 || u >= 1.0) {
        throw std::invalid_argument("sample_time: u must be in [0, 1)");
    }
    const double tau = task_shift(s, model);
    return tau * (1.0 + std::pow(-std::log1p(-u), 1.0 / model.alpha) / model.mu);
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CompletionTrace trace_from_stream(const ExecutionPlan& plan, const TimeModel& model,
                                  std::uint64_t stream_seed) {
    std::mt19937_64 rng(stream_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    CompletionTrace trace;
    trace.seed = stream_seed;
    trace.finish_times.resize(plan.tasks.size());
    for (auto& t : trace.finish_times) {
        t = sample_time(plan.piece_len, model, unif(rng));
    }
    return trace;
}

}  // namespace

CompletionTrace simulate_trace(const ExecutionPlan& plan, const TimeModel& model,
                               std::uint64_t seed) {
    return trace_from_stream(plan, model, splitmix64(seed));
}

double strategy_finish_time(const ExecutionPlan& plan, const CompletionTrace& trace) {
    if (trace.finish_times.size() != plan.tasks.size()) {
        throw std::invalid_argument("strategy_finish_time: trace must cover all tasks");
    }
    double overall = 0.0;
    std::vector<double> member_times;
    for (const auto& group : plan.groups) {
        member_times.clear();
        for (int t : group.members) {
            member_times.push_back(trace.finish_times[static_cast<std::size_t>(t)]);
        }
        auto nth = member_times.begin() + (group.quorum - 1);
        std::nth_element(member_times.begin(), nth, member_times.end());
        overall = std::max(overall, *nth);
    }
    return overall;
}

std::vector<double> monte_carlo_finish_times(const ExecutionPlan& plan,
                                             const TimeModel& model, long trials,
                                             std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
    std::vector<double> finish(static_cast<std::size_t>(trials));
    for (long i = 0; i < trials; ++i) {
        const std::uint64_t sub =
            splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i)));
        finish[static_cast<std::size_t>(i)] =
            strategy_finish_time(plan, trace_from_stream(plan, model, sub));
    }
    std::sort(finish.begin(), finish.end());
    return finish;
}

std::vector<std::pair<double, double>> monte_carlo_tail(
    const ExecutionPlan& plan, const TimeModel& model,
    const std::vector<double>& deadlines, long trials, std::uint64_t seed) {
    const std::vector<double> finish = monte_carlo_finish_times(plan, model, trials, seed);
    std::vector<std::pair<double, double>> result;
    result.reserve(deadlines.size());
    for (double t : deadlines) {
        const auto over = finish.end() - std::upper_bound(finish.begin(), finish.end(), t);
        result.emplace_back(t, static_cast<double>(over) / static_cast<double>(trials));
    }
    return result;
}

}  // namespace codedconv
