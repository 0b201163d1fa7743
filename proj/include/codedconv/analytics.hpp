#pragma once

#include <utility>
#include <vector>

#include "codedconv/planner.hpp"
#include "codedconv/straggler_sim.hpp"

namespace codedconv {

// Leading coefficient of the deadline-failure exponent:
// log P(fail at deadline t) ~ epsilon * t^alpha as t -> infinity.
// Exact for uncoded and replication; an upper bound for coded.
struct ExponentReport {
    double epsilon = 0.0;
    long worst_k = 0;
    long s = 0;
    bool is_upper_bound = false;
};

// epsilon(s) = -(p*s/n2 - n1/s + 1) * mu^alpha / tau(s)^alpha.
// s may be any value in [sqrt(n1*n2/p), min(n1,n2)]; divisibility is not
// required at formula level.
ExponentReport epsilon(const ProblemSpec& spec, double s, const TimeModel& model);

// Replication exponent: coefficient r at s = sqrt(n1*n2*r/p), K = p-r+1.
ExponentReport epsilon_replication(const ProblemSpec& spec, long r,
                                   const TimeModel& model);

// |eps(2*sqrt(n1*n2/p))| / |eps(sqrt(n1*n2/p))| and its proved lower bound
// 3*sqrt(p*n1/n2) / (2*4^alpha). The ratio always exceeds the bound.
std::pair<double, double> theorem5_ratio(const ProblemSpec& spec,
                                         const TimeModel& model);

// E(s) = ln(-epsilon(s)); larger means faster tail decay.
double heuristic_E(const ProblemSpec& spec, double s, const TimeModel& model);

// dE/ds = (p/n2 + n1/s^2)/(p*s/n2 - n1/s + 1) - alpha/s - alpha/(s*ln(2s)).
double heuristic_E_prime(const ProblemSpec& spec, double s, const TimeModel& model);

// Shape threshold below which E is increasing at the uncoded point, so a
// coded s beats uncoded: 2*sqrt(p*n1/n2) / (1 + 1/log(2*sqrt(n1*n2/p))).
double alpha_threshold(const ProblemSpec& spec, const CostModel& model = {});

// |epsilon|-maximizing integer s among plan-feasible coded piece lengths;
// ties go to the smaller s.
long best_s(const ProblemSpec& spec, const TimeModel& model);

// Feasible coded piece lengths (the search space of best_s).
std::vector<long> feasible_coded_s(const ProblemSpec& spec);

// Formula-level model of (encode + decode + add) cost over the
// per-processor cost, using the fast evaluation/interpolation counts.
double complexity_ratio(const ProblemSpec& spec, long s, const TimeModel& model);

// Least-squares slope of ln(survival) against deadline^alpha over the
// largest-deadline `tail_fraction` of the points with survival in (0,1).
double fit_tail_slope(const std::vector<std::pair<double, double>>& points,
                      double alpha, double tail_fraction = 0.5);

}  // namespace codedconv
