#include "codedconv/engine.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace codedconv {

CompletionOrder CompletionOrder::identity(std::size_t num_tasks) {
    CompletionOrder o;
    o.order.resize(num_tasks);
    std::iota(o.order.begin(), o.order.end(), 0);
    return o;
}

CompletionOrder CompletionOrder::from_times(const std::vector<double>& finish_times) {
    CompletionOrder o = identity(finish_times.size());
    std::stable_sort(o.order.begin(), o.order.end(), [&](int lhs, int rhs) {
        return finish_times[static_cast<std::size_t>(lhs)] <
               finish_times[static_cast<std::size_t>(rhs)];
    });
    return o;
}

namespace {

std::vector<RealVector> split_into_pieces(const RealVector& v, long piece_len) {
    std::vector<RealVector> pieces;
    for (std::size_t start = 0; start < v.size();
         start += static_cast<std::size_t>(piece_len)) {
        pieces.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(start),
                            v.begin() + static_cast<std::ptrdiff_t>(
                                            start + static_cast<std::size_t>(piece_len)));
    }
    return pieces;
}

void check_order(const ExecutionPlan& plan, const CompletionOrder& order) {
    if (order.order.size() != plan.tasks.size()) {
        throw std::invalid_argument("execute: order must cover all tasks");
    }
    std::vector<bool> seen(plan.tasks.size(), false);
    for (int t : order.order) {
        if (t < 0 || static_cast<std::size_t>(t) >= plan.tasks.size() ||
            seen[static_cast<std::size_t>(t)]) {
            throw std::invalid_argument("execute: order is not a permutation of task ids");
        }
        seen[static_cast<std::size_t>(t)] = true;
    }
}

// Per-task convolutions for the whole plan. For coded plans the inputs
// are the Vandermonde-coded pieces of a.
std::vector<RealVector> compute_task_outputs(const ExecutionPlan& plan,
                                             const RealVector& a, const RealVector& x,
                                             const ExecuteOptions& options,
                                             unsigned num_threads) {
    const long s = plan.piece_len;
    std::vector<RealVector> a_inputs = split_into_pieces(a, s);
    if (plan.strategy.kind == StrategyKind::coded) {
        const long n = plan.spec.p * s / plan.spec.n2;
        const auto code = make_code(static_cast<int>(n), static_cast<int>(plan.spec.n1 / s),
                                    options.node_scheme);
        a_inputs = encode(code, a_inputs);
    }
    const std::vector<RealVector> x_pieces = split_into_pieces(x, s);

    std::vector<RealVector> outputs(plan.tasks.size());
    auto run_task = [&](std::size_t t) {
        const TaskSpec& task = plan.tasks[t];
        outputs[t] = convolve_fft(a_inputs[static_cast<std::size_t>(task.a_index)],
                                  x_pieces[static_cast<std::size_t>(task.x_index)]);
    };
    if (num_threads <= 1) {
        for (std::size_t t = 0; t < plan.tasks.size(); ++t) run_task(t);
    } else {
        std::vector<std::thread> workers;
        std::mutex m;
        std::size_t next = 0;
        for (unsigned w = 0; w < num_threads; ++w) {
            workers.emplace_back([&] {
                for (;;) {
                    std::size_t t;
                    {
                        std::lock_guard<std::mutex> lock(m);
                        if (next >= plan.tasks.size()) return;
                        t = next++;
                    }
                    run_task(t);
                }
            });
        }
        for (auto& w : workers) w.join();
    }
    return outputs;
}

ExecutionResult assemble(const ExecutionPlan& plan,
                         const std::vector<RealVector>& task_outputs,
                         const CompletionOrder& order, const ExecuteOptions& options) {
    const long s = plan.piece_len;
    const long n1 = plan.spec.n1;
    const std::size_t num_groups = plan.groups.size();

    ExecutionResult result;
    result.per_group_indices.resize(num_groups);
    std::size_t groups_done = 0;
    for (std::size_t pos = 0; pos < order.order.size() && groups_done < num_groups;
         ++pos) {
        const int task_id = order.order[pos];
        const auto g = static_cast<std::size_t>(
            plan.tasks[static_cast<std::size_t>(task_id)].group_id);
        auto& used = result.per_group_indices[g];
        if (static_cast<int>(used.size()) < plan.groups[g].quorum) {
            used.push_back(task_id);
            if (static_cast<int>(used.size()) == plan.groups[g].quorum) {
                if (++groups_done == num_groups) {
                    result.tasks_used = static_cast<long>(pos + 1);
                }
            }
        }
    }
    if (groups_done < num_groups) {
        throw std::invalid_argument("execute: order does not complete every group");
    }

    // One assembled output per part of x, each of length n1 + s - 1.
    const std::size_t x_parts = static_cast<std::size_t>(plan.spec.n2 / s);
    std::vector<std::vector<RealVector>> per_xj(x_parts);
    const auto group_len = static_cast<std::size_t>(n1 + s - 1);

    if (plan.strategy.kind == StrategyKind::coded) {
        const long n = plan.spec.p * s / plan.spec.n2;
        const long k = n1 / s;
        const auto code = make_code(static_cast<int>(n), static_cast<int>(k),
                                    options.node_scheme);
        std::map<std::vector<int>, DecoderMatrix> decoder_cache;
        for (std::size_t g = 0; g < num_groups; ++g) {
            std::vector<int> rows;
            for (int task_id : result.per_group_indices[g]) {
                rows.push_back(plan.tasks[static_cast<std::size_t>(task_id)].a_index);
            }
            std::sort(rows.begin(), rows.end());
            auto it = decoder_cache.find(rows);
            if (it == decoder_cache.end()) {
                DecoderMatrix dec = make_decoder(code, rows);
                if (options.corrupt_decode) dec.inverse[0] += 0.5;
                it = decoder_cache.emplace(rows, std::move(dec)).first;
            }
            // Coded outputs ordered to match the decoder's sorted row set.
            std::vector<int> by_row = result.per_group_indices[g];
            std::sort(by_row.begin(), by_row.end(), [&](int lhs, int rhs) {
                return plan.tasks[static_cast<std::size_t>(lhs)].a_index <
                       plan.tasks[static_cast<std::size_t>(rhs)].a_index;
            });
            std::vector<RealVector> coded;
            for (int task_id : by_row) {
                coded.push_back(task_outputs[static_cast<std::size_t>(task_id)]);
            }
            std::vector<RealVector> decoded = decode_group(it->second, coded);
            const auto j = static_cast<std::size_t>(plan.groups[g].x_index);
            per_xj[j].resize(1);
            per_xj[j][0] = shift_add_combine(decoded, static_cast<std::size_t>(s),
                                             group_len);
        }
    } else {
        // Uncoded/replication: the first finisher of each group is a true
        // piece-convolution a_i * x_j; gather them per j ordered by i.
        for (std::size_t j = 0; j < x_parts; ++j) {
            per_xj[j].resize(static_cast<std::size_t>(n1 / s));
        }
        for (std::size_t g = 0; g < num_groups; ++g) {
            const int task_id = result.per_group_indices[g].front();
            const TaskSpec& task = plan.tasks[static_cast<std::size_t>(task_id)];
            per_xj[static_cast<std::size_t>(task.x_index)]
                  [static_cast<std::size_t>(task.a_index)] =
                task_outputs[static_cast<std::size_t>(task_id)];
        }
    }

    std::vector<RealVector> group_outputs(x_parts);
    for (std::size_t j = 0; j < x_parts; ++j) {
        if (per_xj[j].size() == 1) {
            group_outputs[j] = std::move(per_xj[j][0]);
        } else {
            group_outputs[j] =
                shift_add_combine(per_xj[j], static_cast<std::size_t>(s), group_len);
        }
    }
    result.output = reconstruct(plan, group_outputs);
    return result;
}

void check_inputs(const ExecutionPlan& plan, const RealVector& a, const RealVector& x) {
    if (static_cast<long>(a.size()) != plan.spec.n1 ||
        static_cast<long>(x.size()) != plan.spec.n2) {
        throw std::invalid_argument("execute: |a| must be n1 and |x| must be n2");
    }
}

}  // namespace

ExecutionResult execute(const ExecutionPlan& plan, const RealVector& a,
                        const RealVector& x, const CompletionOrder& order,
                        const ExecuteOptions& options) {
    check_inputs(plan, a, x);
    check_order(plan, order);
    const auto outputs = compute_task_outputs(plan, a, x, options, 1);
    return assemble(plan, outputs, order, options);
}

ExecutionResult execute_concurrent(const ExecutionPlan& plan, const RealVector& a,
                                   const RealVector& x, unsigned num_threads,
                                   const ExecuteOptions& options) {
    check_inputs(plan, a, x);
    if (num_threads == 0) {
        num_threads = std::max(1u, std::thread::hardware_concurrency());
    }
    const long s = plan.piece_len;
    std::vector<RealVector> a_inputs = split_into_pieces(a, s);
    if (plan.strategy.kind == StrategyKind::coded) {
        const long n = plan.spec.p * s / plan.spec.n2;
        const auto code = make_code(static_cast<int>(n), static_cast<int>(plan.spec.n1 / s),
                                    options.node_scheme);
        a_inputs = encode(code, a_inputs);
    }
    const std::vector<RealVector> x_pieces = split_into_pieces(x, s);

    std::vector<RealVector> outputs(plan.tasks.size());
    CompletionOrder arrival;
    std::mutex m;
    std::size_t next = 0;
    auto worker = [&] {
        for (;;) {
            std::size_t t;
            {
                std::lock_guard<std::mutex> lock(m);
                if (next >= plan.tasks.size()) return;
                t = next++;
            }
            const TaskSpec& task = plan.tasks[t];
            RealVector out =
                convolve_fft(a_inputs[static_cast<std::size_t>(task.a_index)],
                             x_pieces[static_cast<std::size_t>(task.x_index)]);
            std::lock_guard<std::mutex> lock(m);
            outputs[t] = std::move(out);
            arrival.order.push_back(static_cast<int>(t));
        }
    };
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < num_threads; ++w) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
    return assemble(plan, outputs, arrival, options);
}

RealVector reconstruct(const ExecutionPlan& plan,
                       const std::vector<RealVector>& group_outputs) {
    const long s = plan.piece_len;
    if (static_cast<long>(group_outputs.size()) != plan.spec.n2 / s) {
        throw std::invalid_argument("reconstruct: expected one output per part of x");
    }
    const auto group_len = static_cast<std::size_t>(plan.spec.n1 + s - 1);
    for (const auto& g : group_outputs) {
        if (g.size() != group_len) {
            throw std::invalid_argument("reconstruct: group output length must be n1+s-1");
        }
    }
    return shift_add_combine(group_outputs, static_cast<std::size_t>(s),
                             static_cast<std::size_t>(plan.spec.n1 + plan.spec.n2 - 1));
}

}  // namespace codedconv
