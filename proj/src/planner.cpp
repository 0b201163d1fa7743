#include "codedconv/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace codedconv {

namespace {

// Exact integer square root; returns -1 when v is not a perfect square.
long exact_isqrt(long v) {
    if (v < 0) return -1;
    long r = std::llround(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return (r * r == v) ? r : -1;
}

// Piece length for an uncoded-style split over p' slots: s = sqrt(n1*n2/p'),
// valid when integral and dividing both n1 and n2. Returns -1 otherwise.
long split_piece_len(long n1, long n2, long slots) {
    if (slots < 1 || (n1 * n2) % slots != 0) return -1;
    long s = exact_isqrt(n1 * n2 / slots);
    if (s < 1 || n1 % s != 0 || n2 % s != 0) return -1;
    return s;
}

}  // namespace

void validate(const ProblemSpec& spec) {
    if (spec.n1 < 1 || spec.n2 < 1 || spec.p < 1) {
        throw std::invalid_argument("ProblemSpec: n1, n2, p must be positive");
    }
    if (spec.p == 1 && spec.n1 == spec.n2) {
        return;  // degenerate single full convolution
    }
    const long m = std::min(spec.n1, spec.n2);
    if (4 * spec.n1 * spec.n2 > spec.p * m * m) {
        throw std::invalid_argument(
            "ProblemSpec: requires 2*sqrt(n1*n2/p) <= min(n1, n2)");
    }
}

std::string to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::uncoded: return "uncoded";
        case StrategyKind::replication: return "replication";
        case StrategyKind::coded: return "coded";
    }
    return "?";
}

ExecutionPlan plan_uncoded(const ProblemSpec& spec) {
    validate(spec);
    const long s = split_piece_len(spec.n1, spec.n2, spec.p);
    if (s < 0) {
        std::string msg =
            "plan_uncoded: sqrt(n1*n2/p) must be an integer dividing n1 and n2";
        for (long d = 1; d < spec.n1 * spec.n2; ++d) {
            for (long cand : {spec.p - d, spec.p + d}) {
                if (cand >= 1 && split_piece_len(spec.n1, spec.n2, cand) > 0) {
                    msg += "; nearest valid p = " + std::to_string(cand);
                    d = spec.n1 * spec.n2;  // stop outer search
                    break;
                }
            }
        }
        throw std::invalid_argument(msg);
    }
    ExecutionPlan plan;
    plan.spec = spec;
    plan.strategy = {StrategyKind::uncoded, 1, s};
    plan.piece_len = s;
    plan.worst_k = spec.p;
    const long cols = spec.n2 / s;
    for (long t = 0; t < spec.p; ++t) {
        TaskSpec task;
        task.task_id = static_cast<int>(t);
        task.group_id = static_cast<int>(t);
        task.a_index = static_cast<int>(t / cols);
        task.x_index = static_cast<int>(t % cols);
        plan.tasks.push_back(task);
        plan.groups.push_back({task.group_id, {task.task_id}, 1, task.x_index});
    }
    return plan;
}

ExecutionPlan plan_replication(const ProblemSpec& spec, long r) {
    validate(spec);
    if (r < 1 || spec.p % r != 0) {
        throw std::invalid_argument("plan_replication: r must divide p");
    }
    if (r == 1) {
        return plan_uncoded(spec);
    }
    const long s = split_piece_len(spec.n1, spec.n2, spec.p / r);
    if (s < 0) {
        throw std::invalid_argument(
            "plan_replication: sqrt(n1*n2*r/p) must be an integer dividing n1 and n2");
    }
    ExecutionPlan plan;
    plan.spec = spec;
    plan.strategy = {StrategyKind::replication, r, s};
    plan.piece_len = s;
    plan.worst_k = (spec.p / r - 1) * r + 1;
    const long cols = spec.n2 / s;
    const long num_groups = spec.p / r;
    int task_id = 0;
    for (long g = 0; g < num_groups; ++g) {
        TaskGroup group;
        group.group_id = static_cast<int>(g);
        group.quorum = 1;
        group.x_index = static_cast<int>(g % cols);
        for (long copy = 0; copy < r; ++copy) {
            TaskSpec task;
            task.task_id = task_id++;
            task.group_id = group.group_id;
            task.a_index = static_cast<int>(g / cols);
            task.x_index = group.x_index;
            group.members.push_back(task.task_id);
            plan.tasks.push_back(task);
        }
        plan.groups.push_back(group);
    }
    return plan;
}

ExecutionPlan plan_coded(const ProblemSpec& spec, long s) {
    // The balanced-split feasibility condition enforced by validate() is not
    // required here: a coded plan fixes s explicitly and only needs the
    // divisibility and redundancy constraints below.
    if (spec.n1 < 1 || spec.n2 < 1 || spec.p < 1) {
        throw std::invalid_argument("plan_coded: n1, n2, p must be positive");
    }
    if (s < 1) throw std::invalid_argument("plan_coded: s must be positive");
    if (s * s * spec.p < spec.n1 * spec.n2) {
        throw std::invalid_argument(
            "plan_coded: s < sqrt(n1*n2/p), not in the coded regime");
    }
    if (s > std::min(spec.n1, spec.n2)) {
        throw std::invalid_argument("plan_coded: s must be <= min(n1, n2)");
    }
    if (spec.n1 % s != 0) {
        throw std::invalid_argument("plan_coded: s must divide n1");
    }
    if (spec.n2 % s != 0) {
        throw std::invalid_argument("plan_coded: s must divide n2");
    }
    if ((spec.p * s) % spec.n2 != 0) {
        throw std::invalid_argument("plan_coded: n2 must divide p*s");
    }
    const long n = spec.p * s / spec.n2;  // coded pieces per group
    const long k = spec.n1 / s;           // source pieces of a
    if (n < k) {
        throw std::invalid_argument("plan_coded: requires p*s/n2 >= n1/s");
    }
    ExecutionPlan plan;
    plan.spec = spec;
    plan.strategy = {StrategyKind::coded, 1, s};
    plan.piece_len = s;
    plan.worst_k = spec.p - n + k;
    const long num_groups = spec.n2 / s;
    int task_id = 0;
    for (long g = 0; g < num_groups; ++g) {
        TaskGroup group;
        group.group_id = static_cast<int>(g);
        group.quorum = static_cast<int>(k);
        group.x_index = static_cast<int>(g);
        for (long row = 0; row < n; ++row) {
            TaskSpec task;
            task.task_id = task_id++;
            task.group_id = group.group_id;
            task.a_index = static_cast<int>(row);
            task.x_index = group.x_index;
            group.members.push_back(task.task_id);
            plan.tasks.push_back(task);
        }
        plan.groups.push_back(group);
    }
    return plan;
}

namespace {

// Completions observed when the last group first reaches quorum.
long completions_until_done(const ExecutionPlan& plan,
                            const std::vector<int>& order) {
    std::vector<int> counts(plan.groups.size(), 0);
    std::size_t groups_done = 0;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const int g = plan.tasks[static_cast<std::size_t>(order[pos])].group_id;
        if (++counts[static_cast<std::size_t>(g)] ==
            plan.groups[static_cast<std::size_t>(g)].quorum) {
            if (++groups_done == plan.groups.size()) {
                return static_cast<long>(pos + 1);
            }
        }
    }
    throw std::invalid_argument("completions_until_done: order never finishes");
}

}  // namespace

long brute_force_worst_case_k(const ExecutionPlan& plan) {
    const long p = static_cast<long>(plan.tasks.size());
    if (p <= 8) {
        std::vector<int> order(static_cast<std::size_t>(p));
        std::iota(order.begin(), order.end(), 0);
        long worst = 0;
        do {
            worst = std::max(worst, completions_until_done(plan, order));
        } while (std::next_permutation(order.begin(), order.end()));
        return worst;
    }
    if (p > 16) {
        throw std::invalid_argument("brute_force_worst_case_k: p > 16 refused");
    }
    // Adversarial construction: fully finish every group except the one with
    // the most slack (size - quorum), then feed that group to quorum.
    std::size_t last = 0;
    long best_slack = -1;
    for (std::size_t g = 0; g < plan.groups.size(); ++g) {
        const long slack = static_cast<long>(plan.groups[g].members.size()) -
                           plan.groups[g].quorum;
        if (slack > best_slack) {
            best_slack = slack;
            last = g;
        }
    }
    std::vector<int> order;
    for (std::size_t g = 0; g < plan.groups.size(); ++g) {
        if (g == last) continue;
        for (int t : plan.groups[g].members) order.push_back(t);
    }
    for (int t : plan.groups[last].members) order.push_back(t);
    return completions_until_done(plan, order);
}

double UncodedCostReport::scenario1_opt() const {
    const double s = std::sqrt(static_cast<double>(spec.n1) * spec.n2 / spec.p);
    return model.c * 2.0 * s * model.log(2.0 * s);
}

double UncodedCostReport::scenario2_at(double s1) const {
    const double s2 = static_cast<double>(spec.n1) * spec.n2 / (spec.p * s1);
    return 2.0 * model.c * s1 * (model.log(2.0 * s2) + 1.0);
}

double UncodedCostReport::serial_cost(long r) const {
    const double s =
        std::sqrt(static_cast<double>(spec.n1) * spec.n2 / (static_cast<double>(r) * spec.p));
    return static_cast<double>(r) * 2.0 * model.c * s * model.log(2.0 * s);
}

UncodedCostReport appendix_a_costs(const ProblemSpec& spec, const CostModel& model) {
    validate(spec);
    return UncodedCostReport{spec, model};
}

}  // namespace codedconv
