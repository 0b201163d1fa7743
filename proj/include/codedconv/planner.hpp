#pragma once

#include <string>
#include <vector>

#include "codedconv/conv_core.hpp"

namespace codedconv {

// The (N1, N2, P) instance. Valid when 2*sqrt(n1*n2/p) <= min(n1, n2),
// except the degenerate single-processor case n1 == n2, p == 1.
struct ProblemSpec {
    long n1 = 0;
    long n2 = 0;
    long p = 0;
};

void validate(const ProblemSpec& spec);

enum class StrategyKind { uncoded, replication, coded };

struct Strategy {
    StrategyKind kind = StrategyKind::uncoded;
    long r = 1;  // replication factor
    long s = 0;  // coded piece length
};

std::string to_string(StrategyKind kind);

struct TaskSpec {
    int task_id = 0;
    int group_id = 0;
    // Source piece index of `a` for uncoded/replication; coded row index
    // into the Vandermonde code for coded plans.
    int a_index = 0;
    int x_index = 0;
};

struct TaskGroup {
    int group_id = 0;
    std::vector<int> members;
    int quorum = 1;
    int x_index = 0;
};

struct ExecutionPlan {
    ProblemSpec spec;
    Strategy strategy;
    long piece_len = 0;  // s
    long worst_k = 0;    // closed-form worst-case completions needed
    std::vector<TaskSpec> tasks;
    std::vector<TaskGroup> groups;
};

// p tasks over the (n1/s) x (n2/s) grid at s = sqrt(n1*n2/p); every task
// is its own group (all must finish), worst_k = p.
ExecutionPlan plan_uncoded(const ProblemSpec& spec);

// p/r groups of r replicas, quorum 1, s = sqrt(n1*n2*r/p),
// worst_k = (p/r - 1)*r + 1. r = 1 is normalized to the uncoded plan.
ExecutionPlan plan_replication(const ProblemSpec& spec, long r);

// n2/s groups of p*s/n2 coded tasks, quorum n1/s,
// worst_k = p - p*s/n2 + n1/s. Requires s >= sqrt(n1*n2/p); equality is the
// degenerate boundary where worst_k = p.
ExecutionPlan plan_coded(const ProblemSpec& spec, long s);

// Oracle for the worst-case K: full permutation enumeration for p <= 8;
// for 8 < p <= 16 the adversarial order (finish every group but the one
// with the most slack, then feed the last group to quorum).
long brute_force_worst_case_k(const ExecutionPlan& plan);

// Per-processor cost comparisons for the uncoded strategy variants.
struct UncodedCostReport {
    ProblemSpec spec;
    CostModel model;

    // C*(2s)*log(2s) at the optimal split s = sqrt(n1*n2/p).
    double scenario1_opt() const;
    // Overlap-method cost 2C*s1*(log(2*n1*n2/(p*s1)) + 1).
    double scenario2_at(double s1) const;
    // r serial uses of the p processors: r*2C*sqrt(n1*n2/(r*p))*log(2*sqrt(n1*n2/(r*p))).
    double serial_cost(long r) const;
};

UncodedCostReport appendix_a_costs(const ProblemSpec& spec,
                                   const CostModel& model = {});

}  // namespace codedconv
