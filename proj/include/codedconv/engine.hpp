#pragma once

#include <vector>

#include "codedconv/conv_core.hpp"
#include "codedconv/mds_code.hpp"
#include "codedconv/planner.hpp"

namespace codedconv {

// Order in which tasks complete; injects straggling into execution.
struct CompletionOrder {
    std::vector<int> order;  // permutation of task ids

    static CompletionOrder identity(std::size_t num_tasks);
    // Sorts task ids by finish time, ties by id.
    static CompletionOrder from_times(const std::vector<double>& finish_times);
};

struct ExecutionResult {
    RealVector output;  // a * x, length n1 + n2 - 1
    long tasks_used = 0;
    // Task ids consumed per group, in group order; size = group quorum.
    std::vector<std::vector<int>> per_group_indices;
};

struct ExecuteOptions {
    NodeScheme node_scheme = NodeScheme::chebyshev;
    // Test hook: perturbs the decode matrix to force a wrong answer.
    bool corrupt_decode = false;
};

// Runs the plan on real data under an injected completion order: split,
// encode (coded plans), convolve each task, decode every group from its
// first quorum of finishers, reconstruct the full convolution.
ExecutionResult execute(const ExecutionPlan& plan, const RealVector& a,
                        const RealVector& x, const CompletionOrder& order,
                        const ExecuteOptions& options = {});

// Same, but tasks run concurrently and the completion order is whatever
// the scheduler produces. The output must not depend on it.
ExecutionResult execute_concurrent(const ExecutionPlan& plan, const RealVector& a,
                                   const RealVector& x, unsigned num_threads = 0,
                                   const ExecuteOptions& options = {});

// Final assembly: one output per part of x (length n1 + s - 1 each),
// shifted by multiples of s and summed into length n1 + n2 - 1.
RealVector reconstruct(const ExecutionPlan& plan,
                       const std::vector<RealVector>& group_outputs);

}  // namespace codedconv
